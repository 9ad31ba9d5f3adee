//! End-to-end cross-checks. Every check compares two independently computed
//! results in exact arithmetic; nothing is compared with a tolerance.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use rand::Rng;

use crate::algebra::{int, rat, truncate, Matrix, Monomial, Polynomial, Rational, SymmetricTensor};
use crate::combinatorics::factorial_u64;
use crate::inversion::{
    bridge_hessian, invert_map_direct, invert_map_legendre, is_two_sided_inverse, jacobian_det, PolynomialMap,
};
use crate::legendre::{legendre_transform, Potential};
use crate::samples;
use crate::trees::oracle::{labeled_trees, labeling_orbit_size};
use crate::trees::{enumerate_trees, labeled_tree_oracle, tree_expand, tree_weight, DecoratedTree, TensorBundle};
use crate::wick;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub oracle_bound: usize,
    pub pairing_bound: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 2005,
            oracle_bound: crate::trees::DEFAULT_ORACLE_BOUND,
            pairing_bound: wick::DEFAULT_PAIRING_BOUND,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

type Check = fn(&VerifyConfig) -> Result<String, String>;

pub const POTENTIAL_COUNT: usize = 50;
pub const POTENTIAL_DEGREE: usize = 6;
pub const MAP_COUNT: usize = 25;
pub const MAP_DEGREE: usize = 5;

pub fn criteria() -> Vec<(usize, &'static str, Check)> {
    vec![
        (1, "tree formula equals Legendre transform on random potentials", tree_formula_random),
        (2, "worked cubic series from three independent paths", worked_series),
        (3, "edge tree and 3-star reproduce the two worked diagrams", worked_diagrams),
        (4, "Legendre transform is an involution", involution),
        (5, "bridge inversion equals direct inversion", inversion_bridge),
        (6, "bridge Hessian equals (-1)^n times squared Jacobian", bridge_hessian_identity),
        (7, "Wick pairing identities", wick_identities),
        (8, "orbit-stabilizer counts for trees", tree_orbit_stabilizer),
    ]
}

pub fn run_criterion(id: usize, cfg: &VerifyConfig) -> Option<CriterionReport> {
    let (id, title, check) = criteria().into_iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (passed, detail) = match check(cfg) {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Some(CriterionReport {
        id,
        title,
        passed,
        detail,
        millis: start.elapsed().as_millis(),
    })
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<CriterionReport> {
    criteria()
        .iter()
        .filter_map(|c| run_criterion(c.0, cfg))
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

/// The seeded random potential family shared by criteria 1 and 4.
pub fn potential_family(seed: u64) -> Vec<Polynomial> {
    let mut rng = samples::rng(seed);
    (0..POTENTIAL_COUNT).map(|_| samples::random_potential(&mut rng)).collect()
}

/// The seeded random map family shared by criteria 5 and 6.
pub fn map_family(seed: u64) -> Vec<PolynomialMap> {
    let mut rng = samples::rng(seed ^ 0x5eed_0005);
    (0..MAP_COUNT)
        .map(|_| {
            let n = rng.gen_range(1..=2);
            samples::random_unipotent_map(&mut rng, n, 3)
        })
        .collect()
}

fn tree_formula_random(cfg: &VerifyConfig) -> Result<String, String> {
    let family = potential_family(cfg.seed);
    let mut dims = [0usize; 4];
    for (k, phi) in family.iter().enumerate() {
        let pot = Potential::new(phi.clone()).map_err(err)?;
        dims[pot.dim()] += 1;
        let lhs = tree_expand(&pot, POTENTIAL_DEGREE).map_err(err)?;
        let rhs = legendre_transform(&pot, POTENTIAL_DEGREE).map_err(err)?;
        ensure(lhs == rhs, || format!("potential #{k} ({phi}): tree sum differs from Legendre transform"))?;
    }
    Ok(format!(
        "{} potentials (n=1: {}, n=2: {}, n=3: {}) agree exactly through degree {}",
        family.len(),
        dims[1],
        dims[2],
        dims[3],
        POTENTIAL_DEGREE
    ))
}

fn cubic_potential() -> Polynomial {
    Polynomial::from_terms(1, [(Monomial::new(vec![2]), rat(1, 2)), (Monomial::new(vec![3]), rat(1, 6))])
}

fn worked_series(cfg: &VerifyConfig) -> Result<String, String> {
    let pot = Potential::new(cubic_potential()).map_err(err)?;
    let expected = Polynomial::from_terms(
        1,
        [
            (Monomial::new(vec![2]), rat(1, 2)),
            (Monomial::new(vec![3]), rat(-1, 6)),
            (Monomial::new(vec![4]), rat(1, 8)),
            (Monomial::new(vec![5]), rat(-1, 8)),
        ],
    );
    let engine = legendre_transform(&pot, 5).map_err(err)?;
    let trees = tree_expand(&pot, 5).map_err(err)?;
    let oracle = labeled_tree_oracle(&pot, 5, cfg.oracle_bound).map_err(err)?;
    for (name, s) in [("Legendre engine", &engine), ("tree enumeration", &trees), ("labeled-tree oracle", &oracle)] {
        ensure(s.body() == &expected, || format!("{name} gave {}", s.body()))?;
    }
    Ok("y^2/2 - y^3/6 + y^4/8 - y^5/8 from all three paths".into())
}

fn random_rational(rng: &mut impl Rng) -> Rational {
    let num = rng.gen_range(-9..=9);
    let den = rng.gen_range(1..=7);
    rat(num, den)
}

fn worked_diagrams(cfg: &VerifyConfig) -> Result<String, String> {
    let mut rng = samples::rng(cfg.seed ^ 0xd1a9);
    let n = 2;
    let y: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
    let edge = enumerate_trees(2, 3).map_err(err)?.remove(0);
    let star = enumerate_trees(3, 3).map_err(err)?.remove(0);
    ensure(edge.aut_order() == 2, || format!("edge tree aut {}", edge.aut_order()))?;
    ensure(star.aut_order() == 6, || format!("3-star aut {}", star.aut_order()))?;
    let trials = 8;
    for trial in 0..trials {
        let t2 = loop {
            let (a, b, c) = (random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng));
            let m = Matrix::from_rows(vec![vec![a, b.clone()], vec![b, c]]);
            if m.det() != int(0) {
                break m;
            }
        };
        let p = t2.inverse().map_err(err)?;
        let mut t3 = SymmetricTensor::zero(n, 3);
        for key in [[0, 0, 0], [0, 0, 1], [0, 1, 1], [1, 1, 1]] {
            t3.set(&key, random_rational(&mut rng));
        }
        let bundle = TensorBundle::new(&p, BTreeMap::from([(3, t3.clone())])).map_err(err)?;

        // explicit index sums, repeated indices summed
        let mut edge_sum = Polynomial::zero(n);
        for i in 0..n {
            for j in 0..n {
                edge_sum = &edge_sum + &(&y[i] * &y[j]).scale(p.get(i, j));
            }
        }
        let edge_sum = edge_sum.scale(&rat(1, 2));
        let mut star_sum = Polynomial::zero(n);
        for i1 in 0..n {
            for i2 in 0..n {
                for i3 in 0..n {
                    let yyy = &(&y[i1] * &y[i2]) * &y[i3];
                    for j1 in 0..n {
                        for j2 in 0..n {
                            for j3 in 0..n {
                                let c = -t3.get(&[j1, j2, j3]) * p.get(i1, j1) * p.get(i2, j2) * p.get(i3, j3);
                                star_sum = &star_sum + &yyy.scale(&c);
                            }
                        }
                    }
                }
            }
        }
        let star_sum = star_sum.scale(&rat(1, 6));

        let w_edge = tree_weight(&edge, &bundle).map_err(err)?;
        let w_star = tree_weight(&star, &bundle).map_err(err)?;
        ensure(w_edge == edge_sum, || format!("trial {trial}: edge weight {w_edge} vs {edge_sum}"))?;
        ensure(w_star == star_sum, || format!("trial {trial}: 3-star weight {w_star} vs {star_sum}"))?;
    }
    Ok(format!("{trials} random rational (T2, T3) pairs in dimension 2, weights match index sums"))
}

fn involution(cfg: &VerifyConfig) -> Result<String, String> {
    let family = potential_family(cfg.seed);
    for (k, phi) in family.iter().enumerate() {
        let pot = Potential::new(phi.clone()).map_err(err)?;
        let once = legendre_transform(&pot, POTENTIAL_DEGREE).map_err(err)?;
        let dual = Potential::from_series(&once).map_err(err)?;
        let twice = legendre_transform(&dual, POTENTIAL_DEGREE).map_err(err)?;
        ensure(twice == truncate(phi, POTENTIAL_DEGREE), || format!("potential #{k} ({phi}) not recovered"))?;
    }
    Ok(format!("{} potentials recovered exactly through degree {}", family.len(), POTENTIAL_DEGREE))
}

fn catalan_series() -> Polynomial {
    Polynomial::from_terms(
        1,
        [(1, 1), (2, 1), (3, 2), (4, 5), (5, 14)].map(|(e, c)| (Monomial::new(vec![e]), int(c))),
    )
}

fn inversion_bridge(cfg: &VerifyConfig) -> Result<String, String> {
    for (k, f) in map_family(cfg.seed).iter().enumerate() {
        let direct = invert_map_direct(f, MAP_DEGREE).map_err(err)?;
        let bridge = invert_map_legendre(f, MAP_DEGREE).map_err(err)?;
        ensure(direct.agrees_with(&bridge), || format!("map #{k}: paths disagree"))?;
        ensure(is_two_sided_inverse(f, &direct).map_err(err)?, || format!("map #{k}: not a two-sided inverse"))?;
    }

    let catalan_map = PolynomialMap::new(vec![&Polynomial::var(1, 0) - &Polynomial::monomial(1, vec![2], int(1))])
        .map_err(err)?;
    for g in [
        invert_map_direct(&catalan_map, 5).map_err(err)?,
        invert_map_legendre(&catalan_map, 5).map_err(err)?,
    ] {
        ensure(g.components[0].body() == &catalan_series(), || {
            format!("Catalan inverse via {:?}: {}", g.method, g.components[0].body())
        })?;
    }

    let keller = PolynomialMap::new(vec![
        &Polynomial::var(2, 0) + &Polynomial::monomial(2, vec![0, 2], int(1)),
        Polynomial::var(2, 1),
    ])
    .map_err(err)?;
    let want = [
        &Polynomial::var(2, 0) - &Polynomial::monomial(2, vec![0, 2], int(1)),
        Polynomial::var(2, 1),
    ];
    for g in [
        invert_map_direct(&keller, MAP_DEGREE).map_err(err)?,
        invert_map_legendre(&keller, MAP_DEGREE).map_err(err)?,
    ] {
        for (got, want) in g.components.iter().zip(&want) {
            ensure(got.body() == want, || format!("Keller inverse via {:?}: {}", g.method, got.body()))?;
        }
    }
    Ok(format!(
        "{MAP_COUNT} random maps agree through degree {MAP_DEGREE}; Catalan and (x1 + x2^2, x2) inverses exact"
    ))
}

fn bridge_hessian_identity(cfg: &VerifyConfig) -> Result<String, String> {
    let sign = |n: usize| if n.is_multiple_of(2) { int(1) } else { int(-1) };
    for (k, f) in map_family(cfg.seed).iter().enumerate() {
        // the bridge lives in (v1..vn, x1..xn); lift det J onto the x slots
        let n = f.dim();
        let j = jacobian_det(f).remap(2 * n, &(n..2 * n).collect::<Vec<_>>());
        let want = (&j * &j).scale(&sign(f.dim()));
        ensure(bridge_hessian(f) == want, || format!("map #{k}: bridge Hessian mismatch"))?;
    }
    let mut rng = samples::rng(cfg.seed ^ 0xe11e);
    let mut keller_count = 0;
    for n in 1..=3 {
        for _ in 0..3 {
            let s = samples::keller_sample(&mut rng, n);
            let h = bridge_hessian(&s.map);
            ensure(h.as_constant() == Some(sign(n)), || format!("Keller sample n={n}: Hessian {h}"))?;
            keller_count += 1;
        }
    }
    Ok(format!(
        "identity holds on {MAP_COUNT} random maps; {keller_count} Keller samples have constant Hessian (-1)^n"
    ))
}

fn wick_identities(cfg: &VerifyConfig) -> Result<String, String> {
    let mut notes = Vec::new();
    for n in 1..=3 {
        let pairings = wick::enumerate_pairings(n, cfg.pairing_bound).map_err(err)?;
        let classes = wick::classify_graphs(n, &pairings, wick::DEFAULT_BRUTE_FORCE_BOUND).map_err(err)?;
        let sum: Rational = classes
            .iter()
            .map(|g| Rational::new(BigInt::from(1), BigInt::from(g.aut_order)))
            .sum();
        let want = wick::moment_closed_form(n);
        ensure(sum == want, || format!("n={n}: sum 1/aut = {sum}, closed form {want}"))?;
        let g = wick::group_order(n);
        for c in &classes {
            ensure(c.orbit_size * c.aut_order == g, || format!("n={n}: orbit-stabilizer fails"))?;
            if n <= wick::DEFAULT_BRUTE_FORCE_BOUND {
                ensure(c.aut_method == wick::AutMethod::BruteForce, || "stabilizer not brute-forced".into())?;
            }
        }
        let orbit_total: u64 = classes.iter().map(|c| c.orbit_size).sum();
        ensure(orbit_total as usize == pairings.len(), || "orbits do not partition pairings".into())?;
        notes.push(format!("n={n}: {} classes, sum {sum}", classes.len()));
    }
    let y = wick::y_series(3, cfg.pairing_bound).map_err(err)?;
    let log_y = wick::log_y_series(3, cfg.pairing_bound).map_err(err)?;
    ensure(log_y.exp() == y, || "exp(log Y) differs from Y".into())?;
    Ok(format!("{}; exp(log Y) = Y through lambda^3", notes.join("; ")))
}

fn tree_orbit_stabilizer(_: &VerifyConfig) -> Result<String, String> {
    let mut classes = 0;
    for m in 2..=5 {
        let trees = enumerate_trees(m, m).map_err(err)?;
        let mut by_class: BTreeMap<String, usize> = BTreeMap::new();
        for j in 0..=m - 2 {
            for edges in labeled_trees(m, j, m) {
                let t = DecoratedTree::from_edges(m + j, &edges);
                *by_class.entry(t.canonical_encoding().to_string()).or_default() += 1;
            }
        }
        for t in &trees {
            let j = t.internal_count();
            let labelings = factorial_u64(m) * factorial_u64(j);
            ensure(labelings.is_multiple_of(t.aut_order()), || format!("{}: aut does not divide m!j!", t.canonical_encoding()))?;
            let want = (labelings / t.aut_order()) as usize;
            let orbit = labeling_orbit_size(t);
            ensure(orbit == want, || format!("{}: {orbit} labelings, expected {want}", t.canonical_encoding()))?;
            let prufer = by_class.get(t.canonical_encoding()).copied().unwrap_or(0);
            ensure(prufer == want, || format!("{}: {prufer} Prüfer trees, expected {want}", t.canonical_encoding()))?;
            classes += 1;
        }
        ensure(by_class.len() == trees.len(), || format!("m={m}: Prüfer classes differ from enumeration"))?;
    }
    Ok(format!("{classes} classes with m <= 5 checked by exhaustive labeling and Prüfer decoding"))
}
