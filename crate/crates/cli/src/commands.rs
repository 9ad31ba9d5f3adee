use anyhow::{bail, Context, Result};
use formal_legendre::algebra::text::{
    format_polynomial, format_rational, indexed_names, parse_polynomial_inferred, parse_polynomials_inferred,
};
use formal_legendre::algebra::{int, Polynomial, Rational, TruncatedSeries};
use formal_legendre::inversion::{
    bridge_potential, invert_map_direct, invert_map_legendre, is_two_sided_inverse, jacobian_det, FormalInverse,
    InversionMethod, PolynomialMap,
};
use formal_legendre::legendre::{
    hessian_det, hessian_matrix, invert_gradient, legendre_transform, verify_potential, HessianClass, Potential,
};
use formal_legendre::trees::{enumerate_trees, labeled_tree_oracle, tree_expand, tree_weight, TensorBundle};
use formal_legendre::verify::{run_criterion, VerifyConfig};
use formal_legendre::wick;

use crate::report::{checks_node, checks_text, Check, Node, Outcome};

fn series_text(s: &TruncatedSeries, names: &[String]) -> String {
    format_polynomial(s.body(), names)
}

fn finish(builder: crate::report::MapBuilder, mut text: String, checks: Vec<Check>) -> Outcome {
    text.push_str(&checks_text(&checks));
    Outcome {
        node: builder.with("checks", checks_node(&checks)).build(),
        text,
        checks,
    }
}

pub fn parse_potential(text: &str) -> Result<(Potential, Vec<String>)> {
    let (phi, names) = parse_polynomial_inferred(text).context("cannot parse potential")?;
    let pot = Potential::new(phi).context("invalid potential")?;
    Ok((pot, names))
}

pub fn parse_map(components: &[String]) -> Result<(PolynomialMap, Vec<String>)> {
    let texts: Vec<&str> = components.iter().map(String::as_str).collect();
    let (polys, names) = parse_polynomials_inferred(&texts).context("cannot parse map")?;
    if polys.len() != names.len() {
        bail!(
            "a map needs one component per variable: {} components over {} variables ({})",
            polys.len(),
            names.len(),
            names.join(", ")
        );
    }
    Ok((PolynomialMap::new(polys).context("invalid map")?, names))
}

pub fn legendre(text: &str, degree: usize) -> Result<Outcome> {
    let (pot, names) = parse_potential(text)?;
    let duals = indexed_names("y", pot.dim());
    let g = invert_gradient(&pot, degree)?;
    let phibar = legendre_transform(&pot, degree)?;
    let g_text: Vec<String> = g.components.iter().map(|c| series_text(c, &duals)).collect();
    let phibar_text = series_text(&phibar, &duals);

    let mut checks = vec![Check::new("gradient_inverse", verify_potential(&pot, degree)?)];
    // ∇φ̄ = g through degree D - 1
    let grad_ok = (0..pot.dim()).all(|i| {
        phibar.body().derivative(i).truncated(degree - 1) == g.components[i].body().truncated(degree - 1)
    });
    checks.push(Check::new("dual_gradient_is_g", grad_ok));

    let mut text_out = format!("phi = {}\ndegree = {degree}\n", format_polynomial(pot.polynomial(), &names));
    for (d, gi) in duals.iter().zip(&g_text) {
        text_out.push_str(&format!("g[{d}] = {gi}\n"));
    }
    text_out.push_str(&format!("phi_bar = {phibar_text}\n"));
    let node = Node::map()
        .str("command", "legendre")
        .str("phi", format_polynomial(pot.polynomial(), &names))
        .with("variables", Node::strs(&names))
        .with("dual_variables", Node::strs(&duals))
        .int("degree", degree as u64)
        .with("g", Node::strs(g_text))
        .str("phi_bar", phibar_text);
    Ok(finish(node, text_out, checks))
}

pub fn trees(text: &str, degree: usize, oracle_bound: Option<usize>, sketch: bool) -> Result<Outcome> {
    let (pot, names) = parse_potential(text)?;
    let duals = indexed_names("y", pot.dim());
    let bundle = TensorBundle::from_potential(&pot)?;
    let mut text_out = format!("phi = {}\ndegree = {degree}\n", format_polynomial(pot.polynomial(), &names));
    let mut classes = Vec::new();
    let mut sum = Polynomial::zero(pot.dim());
    for m in 2..=degree {
        for tree in enumerate_trees(m, bundle.max_degree())? {
            let w = tree_weight(&tree, &bundle)?;
            sum = &sum + &w;
            let w_text = format_polynomial(&w, &duals);
            let internal: Vec<String> = tree.internal_degrees().iter().map(|d| d.to_string()).collect();
            text_out.push_str(&format!(
                "tree {} leaves={m} internal=[{}] aut={} weight = {w_text}\n",
                tree.canonical_encoding(),
                internal.join(","),
                tree.aut_order()
            ));
            if sketch {
                for line in tree.sketch().lines() {
                    text_out.push_str(&format!("    {line}\n"));
                }
            }
            let mut entry = Node::map()
                .str("encoding", tree.canonical_encoding())
                .int("leaves", m as u64)
                .with("internal_degrees", Node::strs(tree.internal_degrees()))
                .int("aut_order", tree.aut_order())
                .str("weight", w_text);
            if sketch {
                entry = entry.with("sketch", Node::strs(tree.sketch().lines()));
            }
            classes.push(entry.build());
        }
    }
    let tree_sum = TruncatedSeries::new(sum, degree);
    let engine = legendre_transform(&pot, degree)?;
    debug_assert_eq!(tree_sum, tree_expand(&pot, degree)?);
    let sum_text = series_text(&tree_sum, &duals);
    text_out.push_str(&format!("tree_sum = {sum_text}\nlegendre = {}\n", series_text(&engine, &duals)));

    let mut checks = vec![Check::new("tree_sum_equals_legendre", tree_sum == engine)];
    let mut node = Node::map()
        .str("command", "trees")
        .str("phi", format_polynomial(pot.polynomial(), &names))
        .int("degree", degree as u64)
        .int("class_count", classes.len() as u64)
        .with("classes", Node::List(classes))
        .str("tree_sum", &sum_text)
        .str("legendre", series_text(&engine, &duals));
    if let Some(bound) = oracle_bound {
        let oracle = labeled_tree_oracle(&pot, degree, bound)?;
        text_out.push_str(&format!("labeled_oracle = {}\n", series_text(&oracle, &duals)));
        node = node.str("labeled_oracle", series_text(&oracle, &duals));
        checks.push(Check::new("labeled_oracle_equals_tree_sum", oracle == tree_sum));
    }
    Ok(finish(node, text_out, checks))
}

fn method_name(m: InversionMethod) -> &'static str {
    match m {
        InversionMethod::Direct => "direct",
        InversionMethod::Legendre => "legendre",
    }
}

pub fn invert(components: &[String], degree: usize, methods: &[InversionMethod]) -> Result<Outcome> {
    let (f, names) = parse_map(components)?;
    let duals = indexed_names("y", f.dim());
    let mut text_out = String::new();
    for (name, c) in names.iter().zip(f.components()) {
        text_out.push_str(&format!("f[{name}] = {}\n", format_polynomial(c, &names)));
    }
    text_out.push_str(&format!("degree = {degree}\n"));
    let mut results: Vec<FormalInverse> = Vec::new();
    for &m in methods {
        results.push(match m {
            InversionMethod::Direct => invert_map_direct(&f, degree)?,
            InversionMethod::Legendre => invert_map_legendre(&f, degree)?,
        });
    }
    let mut checks = Vec::new();
    let mut inverses = Vec::new();
    for r in &results {
        let comps: Vec<String> = r.components.iter().map(|c| series_text(c, &duals)).collect();
        for (d, c) in duals.iter().zip(&comps) {
            text_out.push_str(&format!("{}: g[{d}] = {c}\n", method_name(r.method)));
        }
        checks.push(Check::new(
            format!("{}_two_sided_inverse", method_name(r.method)),
            is_two_sided_inverse(&f, r)?,
        ));
        inverses.push(
            Node::map()
                .str("method", method_name(r.method))
                .with("components", Node::strs(comps))
                .build(),
        );
    }
    if results.len() == 2 {
        checks.push(Check::new("methods_agree", results[0].agrees_with(&results[1])));
    }
    let node = Node::map()
        .str("command", "invert")
        .with("map", Node::strs(f.components().iter().map(|c| format_polynomial(c, &names))))
        .with("variables", Node::strs(&names))
        .with("dual_variables", Node::strs(&duals))
        .int("degree", degree as u64)
        .with("inverses", Node::List(inverses));
    Ok(finish(node, text_out, checks))
}

fn classify(h: &Polynomial) -> (&'static str, Option<Rational>) {
    match HessianClass::of_determinant(h.clone()) {
        HessianClass::Constant(c) => ("constant", Some(c)),
        HessianClass::Zero => ("zero", None),
        HessianClass::NonConstant(_) => ("non_constant", None),
    }
}

fn hessian_of(phi: &Polynomial, names: &[String]) -> (Vec<Vec<String>>, Polynomial) {
    let m = hessian_matrix(phi);
    let rows = (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| format_polynomial(m.get(i, j), names)).collect())
        .collect();
    (rows, hessian_det(phi))
}

fn hessian_report(
    label: &str,
    phi: &Polynomial,
    names: &[String],
    extra: Vec<(String, Node)>,
    mut text_out: String,
    checks: Vec<Check>,
) -> Outcome {
    let (rows, det) = hessian_of(phi, names);
    let (class, constant) = classify(&det);
    text_out.push_str(&format!("{label} = {}\n", format_polynomial(phi, names)));
    for row in &rows {
        text_out.push_str(&format!("H | {}\n", row.join(" | ")));
    }
    text_out.push_str(&format!("det H = {}\nclass = {class}\n", format_polynomial(&det, names)));
    let mut node = Node::map()
        .str("command", "hessian")
        .str(label, format_polynomial(phi, names))
        .with("variables", Node::strs(names))
        .with("matrix", Node::List(rows.into_iter().map(Node::strs).collect()))
        .str("determinant", format_polynomial(&det, names))
        .str("class", class);
    if let Some(c) = constant {
        node = node.str("constant", format_rational(&c));
    }
    for (k, v) in extra {
        node = node.with(&k, v);
    }
    finish(node, text_out, checks)
}

pub fn hessian_potential(text: &str) -> Result<Outcome> {
    let (phi, names) = parse_polynomial_inferred(text).context("cannot parse potential")?;
    let h = hessian_matrix(&phi);
    let checks = vec![Check::new("matrix_symmetric", h.is_symmetric())];
    Ok(hessian_report("phi", &phi, &names, Vec::new(), String::new(), checks))
}

/// Hessian of the bridge potential `v·f(x)` in variables `(v1..vn, x1..xn)`.
pub fn hessian_bridge(components: &[String]) -> Result<Outcome> {
    let (f, map_names) = parse_map(components)?;
    let n = f.dim();
    // rename the map's own variables to x1..xn so v and x never collide
    let xs = indexed_names("x", n);
    let mut names = indexed_names("v", n);
    names.extend(xs.iter().cloned());
    let phi = bridge_potential(&f);
    let j = jacobian_det(&f);
    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
    let lifted = j.remap(2 * n, &(n..2 * n).collect::<Vec<_>>());
    let predicted = (&lifted * &lifted).scale(&sign);
    let checks = vec![
        Check::new("matrix_symmetric", hessian_matrix(&phi).is_symmetric()),
        Check::new("equals_signed_jacobian_square", hessian_det(&phi) == predicted),
    ];
    let mut text_out = String::new();
    if map_names != xs {
        text_out.push_str(&format!("map variables {} renamed to {}\n", map_names.join(", "), xs.join(", ")));
    }
    text_out.push_str(&format!("jacobian_det = {}\n", format_polynomial(&j, &xs)));
    let extra = vec![
        ("jacobian_det".to_string(), Node::str(format_polynomial(&j, &xs))),
        ("keller".to_string(), Node::Bool(j.as_constant().is_some_and(|c| c != int(0)))),
    ];
    Ok(hessian_report("bridge", &phi, &names, extra, text_out, checks))
}

fn lambda_term(c: &Rational, n: usize) -> String {
    if n == 0 {
        format_rational(c)
    } else {
        format!("{}*a^-{}", format_rational(c), 2 * n)
    }
}

pub fn wick(order: usize, pairing_bound: usize) -> Result<Outcome> {
    if order == 0 {
        bail!("--order must be at least 1");
    }
    let y = wick::y_series(order, pairing_bound)?;
    let log_y = wick::log_y_series(order, pairing_bound)?;
    let mut text_out = String::new();
    let mut orders = Vec::new();
    let mut checks = Vec::new();
    for n in 1..=order {
        let pairings = wick::enumerate_pairings(n, pairing_bound)?;
        let classes = wick::classify_graphs(n, &pairings, wick::DEFAULT_BRUTE_FORCE_BOUND)?;
        let inv = |g: &wick::ClosedGraph| Rational::new(1.into(), g.aut_order.into());
        let sum: Rational = classes.iter().map(inv).sum();
        let connected: Rational = classes.iter().filter(|g| g.connected).map(inv).sum();
        let closed = wick::moment_closed_form(n);
        let group = wick::group_order(n);
        text_out.push_str(&format!("order {n}: {} pairings, {} classes\n", pairings.len(), classes.len()));
        let mut class_nodes = Vec::new();
        for g in &classes {
            let loops: Vec<String> = g.loops.iter().map(|l| l.to_string()).collect();
            let edges: Vec<String> = g.multiedges.iter().map(|(u, v, k)| format!("{u}-{v}x{k}")).collect();
            text_out.push_str(&format!(
                "  loops=[{}] edges=[{}] aut={} orbit={} connected={}\n",
                loops.join(","),
                edges.join(","),
                g.aut_order,
                g.orbit_size,
                g.connected
            ));
            class_nodes.push(
                Node::map()
                    .with("loops", Node::strs(&g.loops))
                    .with("edges", Node::strs(edges))
                    .int("aut_order", g.aut_order)
                    .int("orbit_size", g.orbit_size)
                    .str(
                        "aut_method",
                        match g.aut_method {
                            wick::AutMethod::BruteForce => "brute_force",
                            wick::AutMethod::OrbitRelation => "orbit_relation",
                        },
                    )
                    .bool("connected", g.connected)
                    .build(),
            );
        }
        text_out.push_str(&format!(
            "  sum 1/aut = {}, closed form {}\n",
            format_rational(&sum),
            format_rational(&closed)
        ));
        let sign = if n % 2 == 0 { int(1) } else { int(-1) };
        checks.push(Check::new(format!("order_{n}_sum_matches_closed_form"), sum == closed));
        checks.push(Check::new(
            format!("order_{n}_orbit_stabilizer"),
            classes.iter().all(|g| g.orbit_size * g.aut_order == group)
                && classes.iter().map(|g| g.orbit_size as usize).sum::<usize>() == pairings.len(),
        ));
        checks.push(Check::new(
            format!("order_{n}_connected_graphs_give_log"),
            log_y.coefficient(n) == &sign * &connected,
        ));
        orders.push(
            Node::map()
                .int("order", n as u64)
                .int("pairings", pairings.len() as u64)
                .int("group_order", group)
                .with("classes", Node::List(class_nodes))
                .str("sum_inverse_aut", format_rational(&sum))
                .str("closed_form", format_rational(&closed))
                .str("connected_sum_inverse_aut", format_rational(&connected))
                .build(),
        );
    }
    let y_terms: Vec<String> = (0..=order).map(|n| lambda_term(&y.coefficient(n), n)).collect();
    let log_terms: Vec<String> = (0..=order).map(|n| lambda_term(&log_y.coefficient(n), n)).collect();
    for n in 0..=order {
        text_out.push_str(&format!("lambda^{n}: Y {}, log Y {}\n", y_terms[n], log_terms[n]));
    }
    checks.push(Check::new("exp_log_y_equals_y", log_y.exp() == y));
    let node = Node::map()
        .str("command", "wick")
        .int("order", order as u64)
        .with("orders", Node::List(orders))
        .with("y_series", Node::strs(y_terms))
        .with("log_y_series", Node::strs(log_terms));
    Ok(finish(node, text_out, checks))
}

pub fn verify(cfg: &VerifyConfig, only: &[usize]) -> Result<Outcome> {
    let ids: Vec<usize> = if only.is_empty() { (1..=8).collect() } else { only.to_vec() };
    let mut text_out = format!("seed = {}\n", cfg.seed);
    let mut checks = Vec::new();
    let mut nodes = Vec::new();
    for id in ids {
        let r = run_criterion(id, cfg).with_context(|| format!("no criterion {id}"))?;
        let status = if r.passed { "PASS" } else { "FAIL" };
        text_out.push_str(&format!("criterion {id}: {status} {} ({})\n", r.title, r.detail));
        checks.push(Check::new(format!("criterion_{id}"), r.passed));
        nodes.push(
            Node::map()
                .int("id", id as u64)
                .str("title", r.title)
                .bool("passed", r.passed)
                .str("detail", r.detail)
                .build(),
        );
    }
    let node = Node::map()
        .str("command", "verify")
        .int("seed", cfg.seed)
        .int("oracle_bound", cfg.oracle_bound as u64)
        .int("pairing_bound", cfg.pairing_bound as u64)
        .with("criteria", Node::List(nodes));
    Ok(finish(node, text_out, checks))
}
