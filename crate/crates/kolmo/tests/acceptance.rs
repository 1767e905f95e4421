use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use kolmo_core::diffop::{
    commutes_with_f, op_f, order_oracle, realize, reduce_mod_f, structure_constants_check, structure_table, DiffOp,
    LieOp, Realizer,
};
use kolmo_core::linalg::rank_of_vectors;
use kolmo_core::parse::{parse_diffop, parse_weyl};
use kolmo_core::poly::{int, rat};
use kolmo_core::solutions::{
    brute_force_solutions, group_act, kernel_power_check, poly_solution_basis, polynomial_factor_kernel_check,
    restricted_matrix, solve_determining, DeterminingReport, ExpPoly, GroupParams,
};
use kolmo_core::weyl::{
    basis_deg, basis_ord_labels, casimir, centralizer_check, dim_layer_closed, dim_ord_closed, dim_ord_sum, from_w2,
    grading_decompose, lie_closure, paper_generators, to_w2, GenMonomial, GenWeylElem, Generator, NamedElement,
    PMonomial, WeylElem,
};
use kolmo_core::{Degree, Monomial, Poly, Rational, Ring};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

enum Verdict {
    Pass(String),
    Fail(String),
    Info(String),
}

type Check = fn() -> Verdict;

fn verdict(ok: bool, detail: String) -> Verdict {
    if ok {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Verdict::Fail(format!($($msg)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_rational(r: &mut ChaCha8Rng) -> Rational {
    rat(r.gen_range(-6..=6), r.gen_range(1..=4))
}

fn random_nonzero(r: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = random_rational(r);
        if !q.is_zero() {
            return q;
        }
    }
}

fn random_pmonomial(r: &mut ChaCha8Rng, max_degree: u32) -> PMonomial {
    loop {
        let e = [0; 4].map(|_| r.gen_range(0..=max_degree));
        if e.iter().sum::<u32>() <= max_degree {
            return PMonomial(e);
        }
    }
}

fn random_weyl(r: &mut ChaCha8Rng, max_degree: u32, max_terms: usize) -> WeylElem {
    let n = r.gen_range(1..=max_terms);
    WeylElem::from_terms(
        (0..n)
            .map(|_| (random_pmonomial(r, max_degree), random_rational(r)))
            .collect::<Vec<_>>(),
    )
}

fn c1_presentation() -> Verdict {
    use Generator::*;
    let g = WeylElem::generator;
    let rels = [
        (P3, P0, 3),
        (P1, P2, 1),
        (P3, P2, 0),
        (P3, P1, 0),
        (P2, P0, 0),
        (P1, P0, 0),
    ];
    for (a, b, c) in rels {
        ensure!(
            g(a).commutator(&g(b)) == WeylElem::scalar(int(c)),
            "[{a:?},{b:?}] != {c}"
        );
    }
    Verdict::Pass("6 relations hold".into())
}

fn c2_structure() -> Verdict {
    let checks = structure_constants_check();
    let failures = checks.iter().filter(|c| !c.pass).count();
    let table = structure_table();
    let nonzero = table.iter().filter(|(_, _, t)| !t.is_empty()).count();
    verdict(
        checks.len() == 64 && failures == 0,
        format!(
            "{} ordered pairs, {failures} failures, {nonzero} nonzero unordered brackets (source table lists 19)",
            checks.len()
        ),
    )
}

fn c3_hats() -> Verdict {
    let f = op_f();
    let t = DiffOp::multiplication(Poly::var(Ring::TXY, 0));
    let cases = [
        (LieOp::Pt, NamedElement::HatPt, DiffOp::identity(), "Dx^2 - x*Dy"),
        (
            LieOp::D,
            NamedElement::HatD,
            t.scale(&int(2)),
            "2*t*Dx^2 + x*Dx + (3*y - 2*t*x)*Dy + 2",
        ),
        (
            LieOp::K,
            NamedElement::HatK,
            t.compose(&t),
            "t^2*Dx^2 + (t*x + 3*y)*Dx + (3*t*y - t^2*x)*Dy + x^2 + 2*t",
        ),
    ];
    for (lie, hat, left, display) in cases {
        let full = lie.realize();
        let reduced = realize(&hat.expand());
        ensure!(reduce_mod_f(&full) == reduced, "reduce_mod_F({lie}) != realize({hat})");
        ensure!(
            parse_diffop(display).ok() == Some(reduced.clone()),
            "{hat} display: {reduced}"
        );
        ensure!(
            &full - &reduced == left.compose(&f),
            "{lie} - realize({hat}) is not the expected multiple of F"
        );
    }
    Verdict::Pass("3 reductions, 3 displays, 3 operator identities".into())
}

fn c4_casimir() -> Verdict {
    let c = casimir();
    let seven = parse_weyl("P3^2*P0^2 - 6*P3*P2*P1*P0 - 3*P2^2*P1^2 + 4*P2^3*P0 + 4*P3*P1^3 + 3*P2*P1 - 9*P3*P0")
        .expect("parses");
    ensure!(c == seven, "normal form {c}");
    ensure!(c.num_terms() == 7, "{} terms", c.num_terms());
    let op = realize(&c);
    let display =
        parse_diffop("-12*y*Dx^3 - 3*x^2*Dx^2 + 18*x*y*Dx*Dy + 9*y^2*Dy^2 + 3*x*Dx + (4*x^3 + 27*y)*Dy").unwrap();
    ensure!(op == display, "realized {op}");
    ensure!(c.degree() == Degree::Finite(4), "degree {:?}", c.degree());
    ensure!(op.order() == Degree::Finite(3), "order {:?}", op.order());
    for h in [NamedElement::HatPt, NamedElement::HatD, NamedElement::HatK] {
        ensure!(c.commutator(&h.expand()).is_zero(), "[C, {h}] != 0");
    }
    Verdict::Pass("seven-term form, realized display, degree 4, order 3, central".into())
}

fn c5_dims() -> Verdict {
    let spot = [1u64, 5, 15, 36, 74];
    for n in 0..=12u64 {
        let closed = dim_ord_closed(n);
        ensure!(
            closed == dim_ord_sum(n),
            "n = {n}: closed {closed} vs sum {}",
            dim_ord_sum(n)
        );
        let listed = basis_ord_labels(n as u32).len() as u64;
        ensure!(listed == closed, "n = {n}: basis has {listed}, formula {closed}");
        let layer = if n == 0 { closed } else { closed - dim_ord_closed(n - 1) };
        ensure!(
            layer == dim_layer_closed(n),
            "n = {n}: layer {layer} vs {}",
            dim_layer_closed(n)
        );
        if let Some(s) = spot.get(n as usize) {
            ensure!(closed == *s, "n = {n}: {closed} != {s}");
        }
    }
    Verdict::Pass(format!("n = 0..12, dim at 12 = {}", dim_ord_closed(12)))
}

fn c6_order_oracle() -> Verdict {
    let want = [1usize, 5, 15, 36, 74];
    let got: Vec<usize> = (0..=4).map(|n| order_oracle(n).dimension).collect();
    verdict(got == want, format!("{got:?}"))
}

fn c7_recursion() -> Verdict {
    for g in [Generator::P0, Generator::P1, Generator::P2, Generator::P3] {
        ensure!(commutes_with_f(&realize(&WeylElem::generator(g))), "{g:?}");
    }
    let mut r = rng(7);
    let mut realizer = Realizer::new();
    let f = op_f();
    for i in 0..500 {
        let a = random_weyl(&mut r, 4, 4);
        ensure!(f.commutator(&realizer.realize(&a)).is_zero(), "sample {i}: {a}");
    }
    Verdict::Pass("4 generators, 500 random elements".into())
}

fn coefficient_rank(polys: &[Poly]) -> usize {
    let mut keys: std::collections::BTreeMap<Monomial, usize> = Default::default();
    for p in polys {
        for (m, _) in p.terms() {
            let next = keys.len();
            keys.entry(m.clone()).or_insert(next);
        }
    }
    let vecs: Vec<Vec<Rational>> = polys
        .iter()
        .map(|p| {
            let mut v = vec![Rational::zero(); keys.len()];
            for (m, c) in p.terms() {
                v[keys[m]] = c.clone();
            }
            v
        })
        .collect();
    rank_of_vectors(keys.len(), &vecs).unwrap()
}

fn c8_polysols() -> Verdict {
    for n in 0..=8u32 {
        let basis = poly_solution_basis(n);
        let count = ((n + 1) * (n + 2) / 2) as usize;
        ensure!(basis.len() == count, "n = {n}: {} elements", basis.len());
        ensure!(
            basis.iter().all(|u| u.residual().is_zero()),
            "n = {n}: nonzero residual"
        );
        let polys: Vec<Poly> = basis.iter().map(|u| u.as_poly().unwrap()).collect();
        ensure!(coefficient_rank(&polys) == count, "n = {n}: rank deficit");
    }
    let brute = brute_force_solutions(8);
    let basis: Vec<Poly> = poly_solution_basis(8)
        .iter()
        .map(|u| u.as_poly().unwrap())
        .filter(|p| p.degree() <= Degree::Finite(8))
        .collect();
    let both: Vec<Poly> = basis.iter().chain(&brute).cloned().collect();
    let spanned = coefficient_rank(&both) == brute.len() && basis.len() == brute.len();
    verdict(
        spanned,
        format!("n <= 8 full rank; oracle dimension {} at degree 8", brute.len()),
    )
}

fn c9_determining() -> Verdict {
    let want = [1usize, 5, 15, 36];
    let mut got = Vec::new();
    for (n, w) in want.iter().enumerate() {
        let n = n as u32;
        let cap = DeterminingReport::default_cap(n);
        let a = solve_determining(n, cap);
        let b = solve_determining(n, cap + 1);
        ensure!(!a.interrupted && !b.interrupted, "n = {n}: interrupted");
        ensure!(
            a.dimension == *w && b.dimension == *w,
            "n = {n}: {} / {} at caps {cap} / {}",
            a.dimension,
            b.dimension,
            cap + 1
        );
        got.push(a.dimension);
    }
    Verdict::Pass(format!("{got:?}, stable at cap + 1"))
}

fn binom(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

fn factorial(n: u32) -> i64 {
    (1..=i64::from(n)).product()
}

fn closed_commutator(k: &[u32], l: &[u32], k2: &[u32], l2: &[u32]) -> GenWeylElem {
    let n = k.len();
    let mut out = GenWeylElem::zero(n);
    let bound: Vec<u32> = (0..n).map(|i| k[i].min(l2[i]).max(k2[i].min(l[i]))).collect();
    let mut nu = vec![0u32; n];
    loop {
        let mut c1 = 1i64;
        let mut c2 = 1i64;
        let mut fact = 1i64;
        for i in 0..n {
            c1 *= binom(k2[i], nu[i]) * binom(l[i], nu[i]);
            c2 *= binom(k[i], nu[i]) * binom(l2[i], nu[i]);
            fact *= factorial(nu[i]);
        }
        let c = fact * (c1 - c2);
        if c != 0 {
            let q: Vec<u32> = (0..n).map(|i| k[i] + k2[i] - nu[i]).collect();
            let p: Vec<u32> = (0..n).map(|i| l[i] + l2[i] - nu[i]).collect();
            out = out
                .try_add(&GenWeylElem::monomial(GenMonomial::new(&q, &p), int(c)))
                .unwrap();
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            nu[i] += 1;
            if nu[i] <= bound[i] {
                break;
            }
            nu[i] = 0;
            i += 1;
        }
    }
}

fn multiindices(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| (0..=max).map(move |e| [v.clone(), vec![e]].concat()))
            .collect();
    }
    out
}

fn c10_weyl_iso() -> Verdict {
    let mut r = rng(10);
    for i in 0..500 {
        let a = random_weyl(&mut r, 4, 4);
        let b = random_weyl(&mut r, 4, 4);
        ensure!(
            from_w2(&to_w2(&a)).ok() == Some(a.clone()),
            "pair {i}: round trip of {a}"
        );
        ensure!(
            to_w2(&(&a * &b)) == to_w2(&a).try_mul(&to_w2(&b)).unwrap(),
            "pair {i}: product {a} * {b}"
        );
    }
    let mut checked = 0usize;
    for n in 1..=2usize {
        let idx = multiindices(n, 3);
        let mono = |q: &[u32], p: &[u32]| GenWeylElem::monomial(GenMonomial::new(q, p), int(1));
        for k in &idx {
            for l in &idx {
                let a = mono(k, l);
                for k2 in &idx {
                    for l2 in &idx {
                        let got = a.commutator(&mono(k2, l2)).unwrap();
                        ensure!(got == closed_commutator(k, l, k2, l2), "{k:?} {l:?} {k2:?} {l2:?}");
                        checked += 1;
                    }
                }
            }
        }
    }
    Verdict::Pass(format!("500 pairs; {checked} monomial commutators in W(1) and W(2)"))
}

fn c11_centralizers() -> Verdict {
    use NamedElement::*;
    let b11 = &HatPt.expand() + &WeylElem::p3();
    let b12 = HatPt.expand();
    let b14 = &HatPt.expand() + &HatK.expand();
    let cases = [
        (H1s11.expand(), &b11, "H1"),
        (H2s11.expand(), &b11, "H2"),
        (Hs12.expand(), &b12, "Hs12"),
        (Hs14.expand(), &b14, "Hs14"),
        (Ss14.expand(), &b14, "Ss14"),
        (casimir(), &b14, "C"),
    ];
    for (a, b, name) in &cases {
        ensure!(centralizer_check(a, b), "{name} does not commute with its B");
    }
    ensure!(
        !centralizer_check(&WeylElem::p0(), &WeylElem::p3()),
        "P0 and P3 commute"
    );
    Verdict::Pass(format!(
        "{} elements commute with their B (Ss14 uses coefficient -3 on P3*P1^2*P0)",
        cases.len()
    ))
}

fn c12_grading() -> Verdict {
    let s = NamedElement::SGrading.expand();
    let basis = basis_deg(6);
    for m in &basis {
        let e = WeylElem::monomial(*m, int(1));
        ensure!(s.commutator(&e) == e.scale(&int(-m.weight())), "{m:?}");
    }
    let mut r = rng(12);
    let mut pairs = 0;
    while pairs < 300 {
        let a = homogeneous(&mut r);
        let b = homogeneous(&mut r);
        let wa = *grading_decompose(&a).keys().next().unwrap();
        let wb = *grading_decompose(&b).keys().next().unwrap();
        let ab = &a * &b;
        ensure!(grading_decompose(&ab).keys().all(|w| *w == wa + wb), "{a} * {b}");
        pairs += 1;
    }
    Verdict::Pass(format!(
        "{} monomials of degree <= 6 are eigenvectors; {pairs} homogeneous pairs",
        basis.len()
    ))
}

fn homogeneous(r: &mut ChaCha8Rng) -> WeylElem {
    let lead = random_pmonomial(r, 3);
    let w = lead.weight();
    let mut terms = vec![(lead, random_nonzero(r))];
    for _ in 0..3 {
        let m = random_pmonomial(r, 3);
        if m.weight() == w && m != lead {
            terms.push((m, random_nonzero(r)));
        }
    }
    WeylElem::from_terms(terms)
}

fn c13_kernels() -> Verdict {
    let mut runs = 0;
    for (a, b) in [(Generator::P0, Generator::P3), (Generator::P1, Generator::P2)] {
        for r in 1..=3 {
            for n in 0..=6 {
                let rep = match kernel_power_check(a, b, r, n) {
                    Ok(rep) => rep,
                    Err(e) => return Verdict::Fail(format!("{a:?},{b:?} r={r} N={n}: {e}")),
                };
                ensure!(rep.pass(), "{rep:?}");
                runs += 1;
            }
        }
    }
    let basis = poly_solution_basis(4);
    let p0 = restricted_matrix(&realize(&WeylElem::p0()), &basis, &basis).unwrap();
    let sq = polynomial_factor_kernel_check(&p0, &[(Rational::zero(), 2)]).unwrap();
    ensure!(sq.pass() && sq.total_dim == 9, "{sq:?}");
    let p1 = restricted_matrix(&realize(&WeylElem::p1()), &basis, &basis).unwrap();
    let two = polynomial_factor_kernel_check(&p1, &[(Rational::zero(), 1), (int(1), 1)]).unwrap();
    ensure!(two.pass(), "{two:?}");
    Verdict::Pass(format!("{runs} kernel-power checks; 2 factor-kernel checks"))
}

fn random_params(r: &mut ChaCha8Rng) -> GroupParams {
    GroupParams {
        alpha: random_nonzero(r),
        beta: random_rational(r),
        sigma: random_nonzero(r),
        lambda: [0; 4].map(|_| random_rational(r)),
        exp_shift: Rational::zero(),
    }
}

fn c14_group() -> Verdict {
    let mut r = rng(14);
    let basis = poly_solution_basis(2);
    for i in 0..120 {
        let mut h = ExpPoly::zero();
        for b in &basis {
            h = &h + &b.scale(&random_rational(&mut r));
        }
        if r.gen_bool(0.5) {
            h = group_act(&random_params(&mut r), &h).unwrap();
        }
        let g1 = random_params(&mut r);
        let g2 = random_params(&mut r);
        let once = group_act(&g1, &h).unwrap();
        ensure!(once.residual().is_zero(), "sample {i}: residual after action");
        let twice = group_act(&g2, &once).unwrap();
        let composed = group_act(&g2.compose(&g1).unwrap(), &h).unwrap();
        ensure!(twice == composed, "sample {i}: composition law");
    }
    Verdict::Pass("120 (params, solution) samples".into())
}

fn c15_golden() -> Verdict {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: [(&str, &[&str]); 4] = [
        ("relations", &["relations"]),
        ("casimir", &["casimir"]),
        ("dims_max_n_8", &["dims", "--max-n", "8"]),
        ("polysols_n_3", &["polysols", "--n", "3"]),
    ];
    let mut files = 0;
    for (name, args) in cases {
        for json in [false, true] {
            let mut argv = vec!["kolmo"];
            if json {
                argv.push("--json");
            }
            argv.extend_from_slice(args);
            let first = kolmo::run(argv.clone());
            let second = kolmo::run(argv);
            let file = dir.join(format!("{name}.{}", if json { "json" } else { "txt" }));
            let want = std::fs::read_to_string(&file).unwrap_or_default();
            ensure!(first == second, "{name}: output differs between runs");
            ensure!(first.stdout == want, "{} differs", file.display());
            files += 1;
        }
    }
    Verdict::Pass(format!("{files} golden files byte-identical"))
}

fn c16_closure() -> Verdict {
    let rep = lie_closure(&paper_generators(), 12, 30);
    let low = rep.low_degree_dimension;
    Verdict::Info(format!(
        "degree-<=1 part reached {low} of 5; closure dimension {}, {} iterations, saturated {}, {} dropped above degree 12",
        rep.dimension(),
        rep.iterations,
        rep.saturated,
        rep.dropped
    ))
}

fn main() -> ExitCode {
    let checks: [(u32, &str, Check); 16] = [
        (1, "presentation relations", c1_presentation),
        (2, "structure constants", c2_structure),
        (3, "hat-operator equivalences", c3_hats),
        (4, "Casimir element", c4_casimir),
        (5, "dimension formulas", c5_dims),
        (6, "order oracle", c6_order_oracle),
        (7, "recursion-operator property", c7_recursion),
        (8, "polynomial solutions", c8_polysols),
        (9, "determining equations", c9_determining),
        (10, "Weyl isomorphism", c10_weyl_iso),
        (11, "centralizers", c11_centralizers),
        (12, "grading", c12_grading),
        (13, "kernel decompositions", c13_kernels),
        (14, "group action", c14_group),
        (15, "CLI golden files", c15_golden),
        (16, "Lie closure (exploratory)", c16_closure),
    ];
    let mut failed = 0;
    for (n, name, check) in checks {
        let start = Instant::now();
        let v = check();
        let ms = start.elapsed().as_millis();
        let (label, detail) = match v {
            Verdict::Pass(d) => ("PASS", d),
            Verdict::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Verdict::Info(d) => ("INFO", d),
        };
        println!("criterion {n:>2} {label} [{ms} ms] {name}: {detail}");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all criteria passed");
        ExitCode::SUCCESS
    }
}
