//! Plain-text reports. Every report is a pure function of its input, so
//! repeated runs print identical bytes. Positions are printed 1-based.

use std::io::{self, Write};

use crc_forge::parameters::{check_condition1, feasible_h3q, FeasibilityRule};
use crc_forge::search::SearchSummary;
use crc_forge::structure::{
    classify, clique_cover, derivative, derivative_census, extract_construction_d, DerivativeClass,
};
use crc_forge::verifier::{check_crc, clique_profile, essential_positions, hyperface_profile, CountKind, CrcFailure};
use crc_forge::{Code, CrcVerdict, Space, Symbol};

fn set(symbols: &[Symbol]) -> String {
    let inner: Vec<String> = symbols.iter().map(u32::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn list(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
}

pub fn failure_line(f: &CrcFailure) -> String {
    let (target, what) = match f.kind {
        CountKind::Gamma => (f.class_index.wrapping_sub(1), "previous"),
        CountKind::Beta => (f.class_index + 1, "next"),
    };
    format!(
        "vertex {:?} in distance class {} has {} neighbours in the {what} class {target}, expected {}",
        f.witness_vertex, f.class_index, f.observed_count, f.expected_count
    )
}

pub fn verdict(code: &Code, verdict: &CrcVerdict, out: &mut dyn Write) -> io::Result<()> {
    let s = code.space();
    writeln!(out, "space: H({},{})", s.n(), s.q())?;
    writeln!(out, "size: {}", code.len())?;
    match verdict {
        CrcVerdict::NotRegular(f) => {
            writeln!(out, "completely regular: no")?;
            writeln!(out, "witness: {}", failure_line(f))
        }
        CrcVerdict::Regular(k) => {
            writeln!(out, "completely regular: yes")?;
            writeln!(out, "covering radius: {}", k.rho)?;
            writeln!(out, "intersection array: {{{}; {}}}", list(&k.betas), list(&k.gammas))?;
            writeln!(out, "alpha: {}", list(&k.alphas))?;
            if k.rho == 1 {
                writeln!(out, "gamma: {}", k.gamma())?;
                writeln!(out, "beta: {}", k.beta())?;
                let l = k.eigenvalue().unwrap();
                match k.eigenvalue_index {
                    Some(i) => writeln!(out, "eigenvalue: {l} (index {i})")?,
                    None => writeln!(out, "eigenvalue: {l} (not an eigenvalue of the graph)")?,
                }
            }
            Ok(())
        }
    }
}

pub fn analyze(code: &Code, derivatives: bool, cliques: bool, out: &mut dyn Write) -> io::Result<()> {
    let s = *code.space();
    match check_crc(code) {
        Ok(v) => verdict(code, &v, out)?,
        Err(e) => {
            writeln!(out, "space: H({},{})", s.n(), s.q())?;
            writeln!(out, "size: {}", code.len())?;
            writeln!(out, "completely regular: no ({e})")?;
        }
    }
    let essential: Vec<String> = essential_positions(code).iter().map(|p| (p + 1).to_string()).collect();
    writeln!(out, "essential positions: {}", essential.join(" "))?;
    writeln!(out, "hyperface counts:")?;
    for (p, row) in hyperface_profile(code).counts.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        writeln!(out, "  position {}: {}", p + 1, cells.join(" "))?;
    }
    let cp = clique_profile(code);
    match cp.constant {
        Some(c) => writeln!(out, "clique counts: constant {c}")?,
        None => writeln!(
            out,
            "clique counts: between {} and {}",
            cp.counts.iter().min().unwrap(),
            cp.counts.iter().max().unwrap()
        )?,
    }
    if derivatives {
        derivative_report(code, out)?;
    }
    if cliques {
        clique_report(code, out)?;
    }
    Ok(())
}

fn derivative_report(code: &Code, out: &mut dyn Write) -> io::Result<()> {
    let census = match derivative_census(code) {
        Ok(c) => c,
        Err(e) => return writeln!(out, "derivatives: unavailable ({e})"),
    };
    writeln!(
        out,
        "derivatives: zero={} string={} cross={} unclassified={}",
        census.zero, census.string, census.cross, census.unclassified
    )?;
    let q = code.space().q();
    for position in 0..3 {
        let rest: Vec<usize> = (0..3).filter(|&p| p != position).map(|p| p + 1).collect();
        for u in 0..q {
            for v in (0..q).filter(|&v| v != u) {
                let f = derivative(code, position, u, v).expect("checked by the census");
                let text = match classify(&f) {
                    DerivativeClass::Zero => continue,
                    DerivativeClass::String { x, y, axis } => {
                        format!("string X={} Y={} on position {}", set(&x), set(&y), rest[axis])
                    }
                    DerivativeClass::Cross { x, y } => {
                        format!("cross X={} on position {}, Y={} on position {}", set(&x), rest[0], set(&y), rest[1])
                    }
                    DerivativeClass::Unclassified => "unclassified".to_string(),
                };
                writeln!(out, "  position {} u={u} v={v}: {text}", position + 1)?;
            }
        }
    }
    Ok(())
}

fn clique_report(code: &Code, out: &mut dyn Write) -> io::Result<()> {
    let dec = match clique_cover(code) {
        Ok(d) => d,
        Err(e) => return writeln!(out, "clique cover: none ({e})"),
    };
    let counts: Vec<String> = dec.cliques.iter().enumerate().map(|(p, g)| format!("{}: {}", p + 1, g.len())).collect();
    let total: usize = dec.cliques.iter().map(Vec::len).sum();
    writeln!(out, "clique cover: {total} cliques; by free position {}", counts.join(", "))?;
    writeln!(out, "strong clique property: {}", if dec.strong { "yes" } else { "no" })?;
    if let Some(env) = &dec.envelope {
        writeln!(out, "R = {}, S = {}, T = {}", set(&env.r), set(&env.s), set(&env.t))?;
        let [p1, p2, p3] = env.profiles;
        writeln!(
            out,
            "profiles: D1 (a,b)=({},{}), D2 (a,c)=({},{}), D3 (b,c)=({},{})",
            p1.a, p1.b, p2.a, p2.b, p3.a, p3.b
        )?;
    }
    if dec.strong {
        if let Ok(data) = extract_construction_d(code) {
            let holds = check_condition1(data.q, &data.witness);
            writeln!(out, "witness: {} condition 1: {}", data.witness, if holds { "holds" } else { "fails" })?;
        }
    }
    Ok(())
}

pub fn table(q_max: u32, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "# second eigenvalue of H(3,q), normalized gamma <= q")?;
    writeln!(
        out,
        "# even: gamma even; half: q even, q/2 <= gamma <= q; cond1: odd gamma < q/2 with a Condition 1 witness"
    )?;
    for q in 2..=q_max {
        let mut groups: [(&str, Vec<String>); 4] =
            [("even", vec![]), ("half", vec![]), ("cond1", vec![]), ("none", vec![])];
        for gamma in 1..=q {
            let v = feasible_h3q(q, gamma, 2).expect("normalized query");
            let slot = match v.rule {
                FeasibilityRule::EvenGamma => 0,
                FeasibilityRule::HalfToFull => 1,
                FeasibilityRule::ConditionOne => 2,
                _ => 3,
            };
            groups[slot].1.push(gamma.to_string());
        }
        let cells: Vec<String> = groups
            .iter()
            .map(|(name, g)| format!("{name}: {}", if g.is_empty() { "-".to_string() } else { g.join(",") }))
            .collect();
        writeln!(out, "q={q}  {}", cells.join("  "))?;
    }
    Ok(())
}

pub fn search_summary(space: &Space, summary: &SearchSummary, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "space: H({},{})", space.n(), space.q())?;
    writeln!(out, "codes found: {}", summary.codes_found)?;
    writeln!(out, "nodes visited: {}", summary.nodes_visited)?;
    writeln!(out, "parameter sets (gamma, beta, index):")?;
    for (g, b, i) in &summary.parameter_sets {
        writeln!(out, "  {g} {b} {i}")?;
    }
    let normalized: Vec<String> = summary.normalized().iter().map(|(g, i)| format!("({g},{i})")).collect();
    writeln!(out, "normalized (gamma, index): {}", normalized.join(" "))
}
