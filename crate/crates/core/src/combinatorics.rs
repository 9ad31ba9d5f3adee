//! Small exhaustive-enumeration helpers shared by the brute-force checks.

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

pub fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Every sequence of length `len` over `0..alphabet`, in lexicographic order.
pub fn sequences(alphabet: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if alphabet == 0 && len > 0 { 0 } else { alphabet.pow(len as u32) };
    (0..total).map(move |mut code| {
        let mut s = vec![0; len];
        for k in (0..len).rev() {
            s[k] = code % alphabet;
            code /= alphabet;
        }
        s
    })
}
