use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use kolmo_core::diffop::{format_combination, realize, structure_constants_check, DiffOp, LieOp};
use kolmo_core::linalg::rank_of_vectors;
use kolmo_core::parse::{parse_diffop, parse_expoly, parse_weyl};
use kolmo_core::solutions::{
    group_act, kernel_power_check, poly_solution_basis, solve_determining_with, DeterminingReport, ExpPoly, GroupParams,
};
use kolmo_core::weyl::{
    basis_deg, basis_ord_labels, casimir, dim_layer_closed, dim_ord_closed, dim_ord_sum, grading_decompose,
    lie_closure_with, paper_generators, BasisLabel, NamedElement, PMonomial, WeylElem,
};
use kolmo_core::{Degree, Rational};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::cli::{BasisKind, Command, GroupArgs};
use crate::json;
use crate::report::{Outcome, Report};

/// Invalid input detected after argument parsing; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<kolmo_core::Error> for UsageError {
    fn from(e: kolmo_core::Error) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<Report, UsageError>;

/// Stops long computations once the wall-clock budget is spent.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn seconds(s: f64) -> Result<Self, UsageError> {
        if !(s.is_finite() && s >= 0.0) {
            return Err(UsageError(format!(
                "--budget-seconds must be a non-negative number, got {s}"
            )));
        }
        Ok(Budget {
            deadline: Some(Instant::now() + Duration::from_secs_f64(s)),
        })
    }

    pub fn remaining(&self) -> bool {
        self.deadline.is_none_or(|d| Instant::now() < d)
    }
}

fn quoted(s: &str) -> String {
    format!("{s:?}")
}

/// Canonical echo of a command line, without global flags.
pub fn echo(cmd: &Command) -> String {
    match cmd {
        Command::Relations => "relations".into(),
        Command::NormalForm { expr } => format!("normal-form {}", quoted(expr)),
        Command::Realize { expr } => format!("realize {}", quoted(expr)),
        Command::Dims { max_n } => format!("dims --max-n {max_n}"),
        Command::Basis { n, kind } => {
            let k = match kind {
                BasisKind::Ord => "ord",
                BasisKind::Deg => "deg",
            };
            format!("basis --n {n} --kind {k}")
        }
        Command::Polysols { n } => format!("polysols --n {n}"),
        Command::Apply { op, solution } => format!("apply {} {}", quoted(op), quoted(solution)),
        Command::GroupAct { params: p, solution } => format!(
            "group-act --alpha {} --beta {} --l0 {} --l1 {} --l2 {} --l3 {} --sigma {} {}",
            p.alpha,
            p.beta,
            p.l0,
            p.l1,
            p.l2,
            p.l3,
            p.sigma,
            quoted(solution)
        ),
        Command::Check { solution } => format!("check {}", quoted(solution)),
        Command::Casimir => "casimir".into(),
        Command::Grading { expr } => format!("grading {}", quoted(expr)),
        Command::CentralizerCheck { a, b } => {
            format!("centralizer-check {} {}", quoted(a), quoted(b))
        }
        Command::KernelDecomp { a, b, r, n } => {
            format!("kernel-decomp --a {a:?} --b {b:?} --r {r} --n {n}")
        }
        Command::SolveDetermining { n, degree_cap } => match degree_cap {
            Some(d) => format!("solve-determining --n {n} --degree-cap {d}"),
            None => format!("solve-determining --n {n}"),
        },
        Command::LieClosure {
            degree_cap,
            iter_cap,
            paper_generators,
            exprs,
        } => {
            let mut s = format!("lie-closure --degree-cap {degree_cap} --iter-cap {iter_cap}");
            if *paper_generators {
                s.push_str(" --paper-generators");
            }
            for e in exprs {
                s.push(' ');
                s.push_str(&quoted(e));
            }
            s
        }
    }
}

pub fn dispatch(cmd: &Command, budget: Budget) -> CmdResult {
    let command = echo(cmd);
    match cmd {
        Command::Relations => Ok(relations(command)),
        Command::NormalForm { expr } => normal_form(command, expr),
        Command::Realize { expr } => realize_cmd(command, expr),
        Command::Dims { max_n } => Ok(dims(command, *max_n)),
        Command::Basis { n, kind } => Ok(basis(command, *n, *kind)),
        Command::Polysols { n } => Ok(polysols(command, *n)),
        Command::Apply { op, solution } => apply(command, op, solution),
        Command::GroupAct { params, solution } => group(command, params, solution),
        Command::Check { solution } => check(command, solution),
        Command::Casimir => Ok(casimir_cmd(command)),
        Command::Grading { expr } => grading(command, expr),
        Command::CentralizerCheck { a, b } => centralizer(command, a, b),
        Command::KernelDecomp { a, b, r, n } => kernel(command, (*a).into(), (*b).into(), *r, *n),
        Command::SolveDetermining { n, degree_cap } => Ok(determining(command, *n, *degree_cap, budget)),
        Command::LieClosure {
            degree_cap,
            iter_cap,
            paper_generators,
            exprs,
        } => closure(command, *degree_cap, *iter_cap, *paper_generators, exprs, budget),
    }
}

fn ok_mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn relations(command: String) -> Report {
    let mut body = String::from("presentation relations\n");
    let (p3, p2, p1, p0) = (WeylElem::p3(), WeylElem::p2(), WeylElem::p1(), WeylElem::p0());
    let presentation = [
        ("P3", &p3, "P0", &p0, 3),
        ("P1", &p1, "P2", &p2, 1),
        ("P3", &p3, "P2", &p2, 0),
        ("P3", &p3, "P1", &p1, 0),
        ("P2", &p2, "P0", &p0, 0),
        ("P1", &p1, "P0", &p0, 0),
    ];
    let mut all_ok = true;
    let mut pres_json = Vec::new();
    for (na, a, nb, b, c) in presentation {
        let actual = a.commutator(b);
        let ok = actual == WeylElem::scalar(Rational::from_integer(c.into()));
        all_ok &= ok;
        let _ = writeln!(body, "  [{na}, {nb}] = {actual}  {}", ok_mark(ok));
        pres_json.push(json!({
            "left": na, "right": nb, "expected": c.to_string(), "actual": actual.to_string(), "pass": ok
        }));
    }

    let checks = structure_constants_check();
    let failures = checks.iter().filter(|c| !c.pass).count();
    all_ok &= failures == 0;
    let index = |op: LieOp| LieOp::ALL.iter().position(|x| *x == op).unwrap_or(0);
    let mut nonzero = 0;
    let mut commuting = 0;
    body.push_str("structure constants (realized operators, I acts as -1)\n");
    for c in &checks {
        let (i, j) = (index(c.left), index(c.right));
        if i > j {
            continue;
        }
        if i < j && !c.expected.is_empty() {
            nonzero += 1;
        } else {
            commuting += usize::from(i < j);
            if c.pass {
                continue;
            }
        }
        let _ = writeln!(
            body,
            "  [{}, {}] = {}  {}",
            c.left,
            c.right,
            format_combination(&c.expected),
            ok_mark(c.pass)
        );
    }
    let _ = writeln!(
        body,
        "  {nonzero} nonzero brackets, {commuting} commuting pairs, {} ordered pairs checked, {failures} failures",
        checks.len()
    );
    let structure: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "left": c.left.name(),
                "right": c.right.name(),
                "expected": format_combination(&c.expected),
                "pass": c.pass,
            })
        })
        .collect();
    let payload = json!({
        "presentation": pres_json,
        "structure_constants": structure,
        "nonzero_unordered": nonzero,
        "commuting_unordered": commuting,
        "ordered_checked": checks.len(),
        "failures": failures,
    });
    Report::new(command, Outcome::from_check(all_ok), body, payload)
}

fn degree_value(d: Degree) -> Value {
    match d.finite() {
        Some(n) => json!(n),
        None => json!("-inf"),
    }
}

fn degree_text(d: Degree) -> String {
    match d.finite() {
        Some(n) => n.to_string(),
        None => "-inf".into(),
    }
}

fn normal_form(command: String, expr: &str) -> CmdResult {
    let a = parse_weyl(expr)?;
    let body = format!("{a}\ndegree: {}\n", degree_text(a.degree()));
    let payload = json!({ "element": json::weyl(&a), "text": a.to_string(), "degree": degree_value(a.degree()) });
    Ok(Report::new(command, Outcome::Info, body, payload))
}

fn realize_cmd(command: String, expr: &str) -> CmdResult {
    let a = parse_weyl(expr)?;
    let op = realize(&a);
    let body = format!(
        "{op}\ndegree: {}\norder: {}\n",
        degree_text(a.degree()),
        degree_text(op.order())
    );
    let payload = json!({
        "element": json::weyl(&a),
        "operator": json::diffop(&op),
        "text": op.to_string(),
        "degree": degree_value(a.degree()),
        "order": degree_value(op.order()),
    });
    Ok(Report::new(command, Outcome::Info, body, payload))
}

fn dims(command: String, max_n: u32) -> Report {
    let mut body = format!("{:>3} {:>11} {:>7} {:>6}\n", "n", "enumerated", "closed", "layer");
    let mut rows = Vec::new();
    let mut all_ok = true;
    for n in 0..=max_n {
        let n64 = u64::from(n);
        let enumerated = basis_ord_labels(n).len() as u64;
        let closed = dim_ord_closed(n64);
        let sum = dim_ord_sum(n64);
        let layer = dim_layer_closed(n64);
        let below = if n == 0 { 0 } else { dim_ord_closed(n64 - 1) };
        let ok = enumerated == closed && closed == sum && closed - below == layer;
        all_ok &= ok;
        let _ = writeln!(body, "{n:>3} {enumerated:>11} {closed:>7} {layer:>6}");
        rows.push(json!({
            "n": n, "enumerated": enumerated, "closed_form": closed, "sum_form": sum, "layer": layer, "pass": ok
        }));
    }
    Report::new(command, Outcome::from_check(all_ok), body, json!({ "rows": rows }))
}

fn label_text(l: &BasisLabel) -> String {
    let mono = WeylElem::monomial(l.monomial, Rational::from_integer(1.into())).to_string();
    match (l.casimir_power, l.monomial == PMonomial::ONE) {
        (0, _) => mono,
        (1, true) => "C".into(),
        (1, false) => format!("C*{mono}"),
        (m, true) => format!("C^{m}"),
        (m, false) => format!("C^{m}*{mono}"),
    }
}

fn basis(command: String, n: u32, kind: BasisKind) -> Report {
    let labels: Vec<BasisLabel> = match kind {
        BasisKind::Ord => basis_ord_labels(n),
        BasisKind::Deg => basis_deg(n)
            .into_iter()
            .map(|monomial| BasisLabel {
                casimir_power: 0,
                monomial,
            })
            .collect(),
    };
    let mut body = String::new();
    for l in &labels {
        let _ = writeln!(body, "{}", label_text(l));
    }
    let _ = writeln!(body, "count: {}", labels.len());
    let items: Vec<Value> = labels
        .iter()
        .map(|l| json!({ "casimir_power": l.casimir_power, "exp": l.monomial.0, "text": label_text(l) }))
        .collect();
    let expected = match kind {
        BasisKind::Ord => dim_ord_closed(u64::from(n)),
        BasisKind::Deg => basis_deg(n).len() as u64,
    };
    let outcome = Outcome::from_check(labels.len() as u64 == expected);
    Report::new(
        command,
        outcome,
        body,
        json!({ "count": labels.len(), "expected": expected, "elements": items }),
    )
}

fn polysols(command: String, n: u32) -> Report {
    let sols = poly_solution_basis(n);
    let polys: Vec<kolmo_core::Poly> = sols.iter().filter_map(ExpPoly::as_poly).collect();
    let mut keys = std::collections::BTreeMap::new();
    for p in &polys {
        for (m, _) in p.terms() {
            let next = keys.len();
            keys.entry(m.clone()).or_insert(next);
        }
    }
    let vectors: Vec<Vec<Rational>> = polys
        .iter()
        .map(|p| {
            let mut v = vec![Rational::zero(); keys.len()];
            for (m, c) in p.terms() {
                v[keys[m]] = c.clone();
            }
            v
        })
        .collect();
    let rank = rank_of_vectors(keys.len(), &vectors).unwrap_or(0);
    let mut body = String::new();
    let mut items = Vec::new();
    let mut residuals_ok = true;
    let mut idx = 0;
    for s in 0..=n {
        for k in 0..=s {
            let l = s - k;
            let u = &sols[idx];
            idx += 1;
            let zero = u.residual().is_zero();
            residuals_ok &= zero;
            let _ = writeln!(body, "k={k} l={l}: {u}");
            items.push(
                json!({ "k": k, "l": l, "solution": json::expoly(u), "text": u.to_string(), "residual_zero": zero }),
            );
        }
    }
    let expected = ((n + 1) * (n + 2) / 2) as usize;
    let _ = writeln!(
        body,
        "count: {} (expected {expected}), rank: {rank}, residuals: {}",
        sols.len(),
        if residuals_ok { "all zero" } else { "NONZERO" }
    );
    let ok = sols.len() == expected && rank == expected && residuals_ok;
    let payload = json!({ "count": sols.len(), "expected": expected, "rank": rank, "solutions": items });
    Report::new(command, Outcome::from_check(ok), body, payload)
}

fn parse_operator(text: &str) -> Result<(DiffOp, bool), UsageError> {
    match parse_weyl(text) {
        Ok(a) => Ok((realize(&a), true)),
        Err(weyl_err) => match parse_diffop(text) {
            Ok(op) => Ok((op, false)),
            Err(_) => Err(weyl_err.into()),
        },
    }
}

fn apply(command: String, op_text: &str, sol_text: &str) -> CmdResult {
    let (op, recursion) = parse_operator(op_text)?;
    let u = parse_expoly(sol_text)?;
    let input_solution = u.residual().is_zero();
    let v = u.apply_op(&op);
    let res = v.residual();
    let output_solution = res.is_zero();
    let body = format!(
        "{v}\ninput is a solution: {}\noutput residual: {res}\n",
        if input_solution { "yes" } else { "no" }
    );
    let outcome = if recursion && input_solution {
        Outcome::from_check(output_solution)
    } else {
        Outcome::Info
    };
    let payload = json!({
        "operator": json::diffop(&op),
        "result": json::expoly(&v),
        "text": v.to_string(),
        "input_is_solution": input_solution,
        "output_residual": json::expoly(&res),
    });
    Ok(Report::new(command, outcome, body, payload))
}

fn group(command: String, p: &GroupArgs, sol_text: &str) -> CmdResult {
    let g = GroupParams {
        alpha: p.alpha.clone(),
        beta: p.beta.clone(),
        sigma: p.sigma.clone(),
        lambda: [p.l0.clone(), p.l1.clone(), p.l2.clone(), p.l3.clone()],
        exp_shift: Rational::zero(),
    };
    let u = parse_expoly(sol_text)?;
    let v = group_act(&g, &u)?;
    let input_solution = u.residual().is_zero();
    let res = v.residual();
    let body = format!(
        "{v}\ninput is a solution: {}\noutput residual: {res}\n",
        if input_solution { "yes" } else { "no" }
    );
    let outcome = if input_solution {
        Outcome::from_check(res.is_zero())
    } else {
        Outcome::Info
    };
    let payload = json!({
        "result": json::expoly(&v),
        "text": v.to_string(),
        "input_is_solution": input_solution,
        "output_residual": json::expoly(&res),
    });
    Ok(Report::new(command, outcome, body, payload))
}

fn check(command: String, sol_text: &str) -> CmdResult {
    let u = parse_expoly(sol_text)?;
    let res = u.residual();
    let body = format!("residual: {res}\n");
    let payload =
        json!({ "solution": json::expoly(&u), "residual": json::expoly(&res), "residual_text": res.to_string() });
    Ok(Report::new(command, Outcome::from_check(res.is_zero()), body, payload))
}

fn casimir_cmd(command: String) -> Report {
    let c = casimir();
    let op = realize(&c);
    let mut body = format!(
        "normal form: {c}\ndegree: {}\nrealization: {op}\norder: {}\n",
        degree_text(c.degree()),
        degree_text(op.order())
    );
    let mut ok = c.degree() == Degree::Finite(4) && op.order() == Degree::Finite(3);
    let mut central = Vec::new();
    for e in [NamedElement::HatPt, NamedElement::HatD, NamedElement::HatK] {
        let zero = c.commutator(&e.expand()).is_zero();
        ok &= zero;
        let _ = writeln!(body, "[C, {}] = 0  {}", e.ident(), ok_mark(zero));
        central.push(json!({ "with": e.ident(), "commutes": zero }));
    }
    let payload = json!({
        "element": json::weyl(&c),
        "text": c.to_string(),
        "degree": degree_value(c.degree()),
        "operator": json::diffop(&op),
        "operator_text": op.to_string(),
        "order": degree_value(op.order()),
        "central": central,
    });
    Report::new(command, Outcome::from_check(ok), body, payload)
}

fn grading(command: String, expr: &str) -> CmdResult {
    let a = parse_weyl(expr)?;
    let s = NamedElement::SGrading.expand();
    let mut body = String::new();
    let mut parts = Vec::new();
    let mut ok = true;
    for (m, part) in grading_decompose(&a) {
        let eigen = s.commutator(&part) == part.scale(&Rational::from_integer((-m).into()));
        ok &= eigen;
        let _ = writeln!(body, "weight {m}: {part}  [S, .] = {}*(.)  {}", -m, ok_mark(eigen));
        parts.push(json!({ "weight": m, "element": json::weyl(&part), "text": part.to_string(), "eigen": eigen }));
    }
    Ok(Report::new(
        command,
        Outcome::from_check(ok),
        body,
        json!({ "components": parts }),
    ))
}

fn centralizer(command: String, a_text: &str, b_text: &str) -> CmdResult {
    let a = parse_weyl(a_text)?;
    let b = parse_weyl(b_text)?;
    let c = a.commutator(&b);
    let body = format!("[a, b] = {c}\n");
    let payload = json!({ "commutator": json::weyl(&c), "text": c.to_string(), "commute": c.is_zero() });
    Ok(Report::new(command, Outcome::from_check(c.is_zero()), body, payload))
}

fn kernel(
    command: String,
    a: kolmo_core::weyl::Generator,
    b: kolmo_core::weyl::Generator,
    r: u32,
    n: u32,
) -> CmdResult {
    let rep = kernel_power_check(a, b, r, n)?;
    let body = format!(
        "ker {a}^{r} on solutions of degree <= {n}: dim {}\npieces B^i ker A (degree shift {}): {:?}\ncontainment: {}\ndirect: {}\ndimensions match: {}\n",
        rep.power_kernel_dim,
        rep.degree_shift,
        rep.piece_dims,
        ok_mark(rep.containment),
        ok_mark(rep.direct),
        ok_mark(rep.dimensions_match),
        a = a.name(),
    );
    let payload = json!({
        "a": a.name(), "b": b.name(), "r": r, "n": n,
        "degree_shift": rep.degree_shift,
        "piece_dims": rep.piece_dims,
        "power_kernel_dim": rep.power_kernel_dim,
        "containment": rep.containment,
        "direct": rep.direct,
        "dimensions_match": rep.dimensions_match,
    });
    Ok(Report::new(command, Outcome::from_check(rep.pass()), body, payload))
}

fn determining(command: String, n: u32, cap: Option<u32>, budget: Budget) -> Report {
    let cap = cap.unwrap_or_else(|| DeterminingReport::default_cap(n));
    let expected = dim_ord_closed(u64::from(n)) as usize;
    let first = solve_determining_with(n, cap, |_, _| budget.remaining());
    let second = if first.interrupted {
        None
    } else {
        Some(solve_determining_with(n, cap + 1, |_, _| budget.remaining()))
    };
    let incomplete = first.interrupted || second.as_ref().is_some_and(|s| s.interrupted);
    let stabilized = second
        .as_ref()
        .filter(|s| !s.interrupted)
        .map(|s| s.dimension == first.dimension);
    let mut body = format!(
        "n: {n}\ndegree cap: {cap}\ndimension: {}{}\nexpected: {expected}\n",
        first.dimension,
        if first.interrupted { " (lower bound)" } else { "" }
    );
    match stabilized {
        Some(s) => {
            let _ = writeln!(body, "stable at cap {}: {}", cap + 1, if s { "yes" } else { "no" });
        }
        None => {
            let _ = writeln!(body, "stable at cap {}: not checked", cap + 1);
        }
    }
    let _ = writeln!(body, "unknowns: {}, blocks: {}", first.unknowns, first.blocks);
    let outcome = if incomplete {
        Outcome::Info
    } else {
        Outcome::from_check(first.dimension == expected && stabilized == Some(true))
    };
    let payload = json!({
        "n": n,
        "degree_cap": cap,
        "dimension": first.dimension,
        "expected": expected,
        "stabilized": stabilized,
        "unknowns": first.unknowns,
        "blocks": first.blocks,
    });
    let mut r = Report::new(command, outcome, body, payload);
    r.incomplete = incomplete;
    r
}

fn closure(
    command: String,
    degree_cap: u32,
    iter_cap: usize,
    use_paper: bool,
    exprs: &[String],
    budget: Budget,
) -> CmdResult {
    let mut gens: Vec<WeylElem> = if use_paper {
        paper_generators().to_vec()
    } else {
        Vec::new()
    };
    for e in exprs {
        gens.push(parse_weyl(e)?);
    }
    if gens.is_empty() {
        return Err(UsageError(
            "lie-closure needs --paper-generators or at least one expression".into(),
        ));
    }
    let rep = lie_closure_with(&gens, degree_cap, iter_cap, |_| budget.remaining());
    let body = format!(
        "generators: {}\ndimension: {}\ndropped above degree {degree_cap}: {}\niterations: {}\nsaturated: {}\ndegree <= 1 part: {} of 5\n",
        gens.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
        rep.dimension(),
        rep.dropped,
        rep.iterations,
        if rep.saturated { "yes" } else { "no" },
        rep.low_degree_dimension,
    );
    let payload = json!({
        "generators": gens.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "degree_cap": degree_cap,
        "iter_cap": iter_cap,
        "dimension": rep.dimension(),
        "dropped": rep.dropped,
        "iterations": rep.iterations,
        "saturated": rep.saturated,
        "low_degree_dimension": rep.low_degree_dimension,
    });
    let mut r = Report::new(command, Outcome::Info, body, payload);
    r.incomplete = rep.interrupted;
    Ok(r)
}
