//! Feynman-diagram combinatorics of the one-dimensional quartic Gaussian
//! model `⟨exp(−λx⁴/4!)⟩` with propagator `1/a`.
//!
//! Half-edge `(v, leg)` of vertex `v` is numbered `4·v + leg`. The symmetry
//! group `Gₙ = (S₄)ⁿ ⋊ Sₙ` permutes legs within vertices and vertices among
//! themselves; its orbits on complete pairings are the 4-valent closed
//! graphs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{double_factorial_odd, factorial, Rational};
use crate::combinatorics::{factorial_u64, permutations};
use crate::error::{Error, Result};

pub const DEFAULT_PAIRING_BOUND: usize = 3;
pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 2;

/// `coefficient · (1/a)^inverse_a_power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Moment {
    pub coefficient: BigInt,
    pub inverse_a_power: u32,
}

/// `⟨x^power⟩`: zero for odd powers, `(2k−1)!!·(1/a)^k` for `power = 2k`.
pub fn gaussian_moment(power: u32) -> Moment {
    if power % 2 == 1 {
        return Moment {
            coefficient: BigInt::zero(),
            inverse_a_power: 0,
        };
    }
    let k = power / 2;
    Moment {
        coefficient: double_factorial_odd(k as u64),
        inverse_a_power: k,
    }
}

/// All perfect matchings of `0..k`, each as a sorted list of pairs. The
/// smallest unmatched element is always paired first, so the order is
/// deterministic.
pub fn perfect_matchings(k: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(free: &mut Vec<usize>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(acc.clone());
            return;
        }
        let a = free.remove(0);
        for idx in 0..free.len() {
            let b = free.remove(idx);
            acc.push((a, b));
            go(free, acc, out);
            acc.pop();
            free.insert(idx, b);
        }
        free.insert(0, a);
    }
    if k % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(&mut (0..k).collect(), &mut Vec::new(), &mut out);
    out
}

/// A complete pairing of the `4n` half-edges of `n` quartic vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairingDiagram {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl PairingDiagram {
    pub fn new(n: usize, pairs: Vec<(usize, usize)>) -> Self {
        assert_eq!(pairs.len(), 2 * n);
        PairingDiagram { n, pairs }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    fn partner(&self) -> Vec<usize> {
        let mut p = vec![0; 4 * self.n];
        for &(a, b) in &self.pairs {
            p[a] = b;
            p[b] = a;
        }
        p
    }

    /// Self-loop counts per vertex and the symmetric edge multiplicity matrix.
    pub fn multigraph(&self) -> (Vec<u32>, Vec<Vec<u32>>) {
        let mut loops = vec![0; self.n];
        let mut mult = vec![vec![0; self.n]; self.n];
        for &(a, b) in &self.pairs {
            let (u, v) = (a / 4, b / 4);
            if u == v {
                loops[u] += 1;
            } else {
                mult[u][v] += 1;
                mult[v][u] += 1;
            }
        }
        (loops, mult)
    }
}

pub fn enumerate_pairings(n: usize, bound: usize) -> Result<Vec<PairingDiagram>> {
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "pairing vertex count",
            requested: n,
            bound,
        });
    }
    Ok(perfect_matchings(4 * n)
        .into_iter()
        .map(|pairs| PairingDiagram::new(n, pairs))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AutMethod {
    /// Stabilizer counted over all of `Gₙ`.
    BruteForce,
    /// `|Gₙ| / orbit size`.
    OrbitRelation,
}

/// Isomorphism class of a 4-valent closed multigraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedGraph {
    pub n: usize,
    /// Self-loop count per vertex, in canonical vertex order.
    pub loops: Vec<u32>,
    /// `(u, v, multiplicity)` for `u < v`, canonical vertex order.
    pub multiedges: Vec<(usize, usize, u32)>,
    pub orbit_size: u64,
    pub aut_order: u64,
    pub aut_method: AutMethod,
    pub connected: bool,
}

impl ClosedGraph {
    pub fn edge_count(&self) -> u32 {
        self.loops.iter().sum::<u32>() + self.multiedges.iter().map(|e| e.2).sum::<u32>()
    }
}

pub fn group_order(n: usize) -> u64 {
    24u64.pow(n as u32) * factorial_u64(n)
}

/// Lexicographically smallest relabelling of the multigraph over all vertex
/// permutations: `(key, permutation)`.
fn canonical_key(loops: &[u32], mult: &[Vec<u32>]) -> (Vec<u32>, Vec<usize>) {
    let n = loops.len();
    permutations(n)
        .into_iter()
        .map(|p| {
            // p[new] = old
            let mut key: Vec<u32> = p.iter().map(|&o| loops[o]).collect();
            for a in 0..n {
                for b in a + 1..n {
                    key.push(mult[p[a]][p[b]]);
                }
            }
            (key, p)
        })
        .min()
        .expect("at least one permutation")
}

/// Order of the stabilizer of `p` in `Gₙ`, by checking every group element.
pub fn stabilizer_order_brute_force(p: &PairingDiagram) -> u64 {
    let n = p.n;
    let partner = p.partner();
    let s4 = permutations(4);
    let mut count = 0;
    for sigma in permutations(n) {
        // odometer over (S₄)ⁿ
        let mut taus = vec![0usize; n];
        loop {
            let image = |h: usize| 4 * sigma[h / 4] + s4[taus[h / 4]][h % 4];
            if (0..4 * n).all(|h| partner[image(h)] == image(partner[h])) {
                count += 1;
            }
            let mut k = 0;
            while k < n {
                taus[k] += 1;
                if taus[k] < 24 {
                    break;
                }
                taus[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    count
}

/// Symmetry factor from the multigraph alone:
/// `|vertex automorphisms| · Π 2^{lᵥ}·lᵥ! · Π m_{uv}!`.
pub fn symmetry_factor(loops: &[u32], mult: &[Vec<u32>]) -> u64 {
    let n = loops.len();
    let vertex_auts = permutations(n)
        .into_iter()
        .filter(|p| (0..n).all(|a| loops[p[a]] == loops[a] && (0..n).all(|b| mult[p[a]][p[b]] == mult[a][b])))
        .count() as u64;
    let loop_part: u64 = loops.iter().map(|&l| 2u64.pow(l) * factorial_u64(l as usize)).product();
    let mut edge_part = 1;
    for a in 0..n {
        for b in a + 1..n {
            edge_part *= factorial_u64(mult[a][b] as usize);
        }
    }
    vertex_auts * loop_part * edge_part
}

fn is_connected(loops: &[u32], mult: &[Vec<u32>]) -> bool {
    let n = loops.len();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for u in 0..n {
            if mult[v][u] > 0 && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Groups pairings of `n` vertices into graph classes. Stabilizers are
/// counted over `Gₙ` when `n ≤ brute_force_bound`, and the orbit relation
/// `orbit · aut = |Gₙ|` is then checked; above the bound `aut` comes from
/// the orbit relation.
pub fn classify_graphs(n: usize, pairings: &[PairingDiagram], brute_force_bound: usize) -> Result<Vec<ClosedGraph>> {
    let mut classes: BTreeMap<Vec<u32>, (u64, PairingDiagram, Vec<usize>)> = BTreeMap::new();
    for p in pairings {
        if p.n != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.n,
            });
        }
        let (loops, mult) = p.multigraph();
        let (key, perm) = canonical_key(&loops, &mult);
        classes.entry(key).or_insert_with(|| (0, p.clone(), perm)).0 += 1;
    }
    let g = group_order(n);
    classes
        .into_values()
        .map(|(orbit, rep, perm)| {
            let (loops, mult) = rep.multigraph();
            let (aut_order, aut_method) = if n <= brute_force_bound {
                let aut = stabilizer_order_brute_force(&rep);
                if aut * orbit != g {
                    return Err(Error::Inconsistent(format!(
                        "orbit {orbit} times stabilizer {aut} is not |G_{n}| = {g}"
                    )));
                }
                (aut, AutMethod::BruteForce)
            } else {
                if !g.is_multiple_of(orbit) {
                    return Err(Error::Inconsistent(format!("orbit {orbit} does not divide {g}")));
                }
                (g / orbit, AutMethod::OrbitRelation)
            };
            let canon_loops: Vec<u32> = perm.iter().map(|&o| loops[o]).collect();
            let mut multiedges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    let m = mult[perm[a]][perm[b]];
                    if m > 0 {
                        multiedges.push((a, b, m));
                    }
                }
            }
            Ok(ClosedGraph {
                n,
                loops: canon_loops,
                multiedges,
                orbit_size: orbit,
                aut_order,
                aut_method,
                connected: is_connected(&loops, &mult),
            })
        })
        .collect()
}

/// All classes for `0..=order` vertices.
pub fn classify_up_to(order: usize, pairing_bound: usize, brute_force_bound: usize) -> Result<Vec<ClosedGraph>> {
    let mut out = Vec::new();
    for n in 0..=order {
        let pairings = enumerate_pairings(n, pairing_bound)?;
        out.extend(classify_graphs(n, &pairings, brute_force_bound)?);
    }
    Ok(out)
}

/// Formal series `Σ cₖ λᵏ (1/a)^{2k}`; only the rational `cₖ` are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaSeries {
    coefficients: Vec<Rational>,
}

impl LambdaSeries {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        LambdaSeries { coefficients }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Coefficient of `λᵏ`, which carries `(1/a)^{2k}`.
    pub fn coefficient(&self, k: usize) -> Rational {
        self.coefficients.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `exp` of a series with zero constant term, via `k·bₖ = Σ i·aᵢ·b_{k−i}`.
    pub fn exp(&self) -> LambdaSeries {
        assert!(self.coefficient(0).is_zero(), "exp needs a zero constant term");
        let order = self.order();
        let mut b = vec![Rational::one()];
        for k in 1..=order {
            let mut acc = Rational::zero();
            for i in 1..=k {
                acc += Rational::from_integer(BigInt::from(i)) * &self.coefficients[i] * &b[k - i];
            }
            b.push(acc / Rational::from_integer(BigInt::from(k)));
        }
        LambdaSeries::new(b)
    }

    /// `log` of a series with constant term 1.
    pub fn log(&self) -> LambdaSeries {
        assert!(self.coefficient(0).is_one(), "log needs constant term 1");
        let order = self.order();
        let mut a = vec![Rational::zero()];
        for k in 1..=order {
            // k·bₖ = Σ_{i=1}^{k} i·aᵢ·b_{k−i}, solved for aₖ (b₀ = 1)
            let mut acc = Rational::from_integer(BigInt::from(k)) * &self.coefficients[k];
            for i in 1..k {
                acc -= Rational::from_integer(BigInt::from(i)) * &a[i] * &self.coefficients[k - i];
            }
            a.push(acc / Rational::from_integer(BigInt::from(k)));
        }
        LambdaSeries::new(a)
    }
}

fn graph_series(order: usize, pairing_bound: usize, connected_only: bool) -> Result<LambdaSeries> {
    if order > pairing_bound {
        return Err(Error::BoundExceeded {
            what: "series order",
            requested: order,
            bound: pairing_bound,
        });
    }
    let mut coeffs = vec![Rational::zero(); order + 1];
    for g in classify_up_to(order, pairing_bound, DEFAULT_BRUTE_FORCE_BOUND)? {
        if g.n == 0 && connected_only {
            continue;
        }
        if connected_only && !g.connected {
            continue;
        }
        let sign = if g.n % 2 == 0 { 1 } else { -1 };
        coeffs[g.n] += Rational::new(BigInt::from(sign), BigInt::from(g.aut_order));
    }
    Ok(LambdaSeries::new(coeffs))
}

/// `Y(λ) ~ Σ_Γ (−λ)^{v_Γ} (1/a)^{e_Γ} / |Aut Γ|`, the empty graph giving 1.
pub fn y_series(order: usize, pairing_bound: usize) -> Result<LambdaSeries> {
    graph_series(order, pairing_bound, false)
}

/// The same sum restricted to connected nonempty graphs.
pub fn log_y_series(order: usize, pairing_bound: usize) -> Result<LambdaSeries> {
    graph_series(order, pairing_bound, true)
}

/// `(4n−1)!!/(n!·24ⁿ)`.
pub fn moment_closed_form(n: usize) -> Rational {
    Rational::new(
        double_factorial_odd(2 * n as u64),
        factorial(n as u64) * BigInt::from(24u64).pow(n as u32),
    )
}
