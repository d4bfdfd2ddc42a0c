//! Embedded verification suite.
//!
//! Each criterion checks the engine against reference data (cohomology
//! tables, Massey verdicts, deformation systems, lattice counts) and
//! reports one pass/fail line plus detail lines. The CLI `verify` command
//! and the acceptance test target both run these.

use crate::calculus::HarmonicFlavor;
use crate::catalog::{self, FixedLocus, PointAction};
use crate::cohomology::{
    cohomology, ddbar_check, duality_checks, formality_check, froelicher_check, harmonic_space,
    Complex, Theory,
};
use crate::exterior::{Form, Sector};
use crate::formexpr::parse_form;
use crate::massey::{abc_massey, dolbeault_massey, MasseyError, Verdict};
use crate::scalar::Scalar;
use crate::table::{compute_table, reps_match, ExpectedTable};

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub tag: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {} ... {}",
            self.id,
            self.tag,
            self.title,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

struct Checker {
    passed: bool,
    details: Vec<String>,
}

impl Checker {
    fn new() -> Checker {
        Checker { passed: true, details: Vec::new() }
    }

    fn check(&mut self, ok: bool, label: impl Into<String>) {
        let label = label.into();
        if !ok {
            self.passed = false;
            self.details.push(format!("FAIL: {label}"));
        }
    }

    fn note(&mut self, label: impl Into<String>) {
        self.details.push(label.into());
    }

    fn fail(&mut self, label: impl Into<String>) {
        self.check(false, label);
    }

    fn finish(self, id: u8, tag: &'static str, title: &'static str) -> CriterionResult {
        CriterionResult { id, tag, title, passed: self.passed, details: self.details }
    }
}

fn pf(rank: u8, text: &str) -> Form {
    parse_form(text, rank).expect("embedded expression parses")
}

fn grid(entries: &[(u8, u8, usize)]) -> std::collections::BTreeMap<(u8, u8), usize> {
    entries.iter().map(|&(p, q, d)| ((p, q), d)).collect()
}

/// Reference Bott-Chern table for the parallelizable Nakamura model: the
/// published dimensions and harmonic representatives, cell by cell.
pub fn nakamura_bc_expected() -> ExpectedTable {
    let mut t = ExpectedTable { theory: "bc".to_string(), ..Default::default() };
    let data: &[(&str, usize, &[&str])] = &[
        ("0,0", 1, &["1"]),
        ("1,0", 1, &["e1"]),
        ("0,1", 1, &["E1"]),
        ("2,0", 3, &["e1^e2", "e1^e3", "e2^e3"]),
        (
            "1,1",
            7,
            &[
                "e1^E1",
                "x(-1,1)*e1^E2",
                "x(1,-1)*e1^E3",
                "x(1,-1)*e2^E1",
                "x(1,-1)*e2^E3",
                "x(-1,1)*e3^E1",
                "x(-1,1)*e3^E2",
            ],
        ),
        ("0,2", 3, &["E1^E2", "E1^E3", "E2^E3"]),
        ("3,0", 1, &["e1^e2^e3"]),
        (
            "2,1",
            9,
            &[
                "e1^e2^E1",
                "x(1,-1)*e1^e2^E1",
                "x(-1,1)*e1^e2^E2",
                "x(1,-1)*e1^e2^E3",
                "e1^e3^E1",
                "x(-1,1)*e1^e3^E1",
                "x(-1,1)*e1^e3^E2",
                "x(1,-1)*e1^e3^E3",
                "e2^e3^E1",
            ],
        ),
        (
            "1,2",
            9,
            &[
                "e1^E1^E2",
                "x(-1,1)*e1^E1^E2",
                "e1^E1^E3",
                "x(1,-1)*e1^E1^E3",
                "e1^E2^E3",
                "x(1,-1)*e2^E1^E2",
                "x(1,-1)*e2^E1^E3",
                "x(-1,1)*e3^E1^E2",
                "x(-1,1)*e3^E1^E3",
            ],
        ),
        ("0,3", 1, &["E1^E2^E3"]),
        (
            "3,1",
            3,
            &["e1^e2^e3^E1", "x(-1,1)*e1^e2^e3^E2", "x(1,-1)*e1^e2^e3^E3"],
        ),
        (
            "2,2",
            3,
            &["x(1,-1)*e1^e2^E1^E2", "x(-1,1)*e1^e3^E1^E2", "e2^e3^E2^E3"],
        ),
        (
            "1,3",
            3,
            &["e1^E1^E2^E3", "x(1,-1)*e2^E1^E2^E3", "x(-1,1)*e3^E1^E2^E3"],
        ),
        (
            "3,2",
            5,
            &[
                "e1^e2^e3^E1^E2",
                "x(-1,1)*e1^e2^e3^E1^E2",
                "e1^e2^e3^E1^E3",
                "x(1,-1)*e1^e2^e3^E1^E3",
                "e1^e2^e3^E2^E3",
            ],
        ),
        (
            "2,3",
            5,
            &[
                "e1^e2^E1^E2^E3",
                "x(1,-1)*e1^e2^E1^E2^E3",
                "e1^e3^E1^E2^E3",
                "x(-1,1)*e1^e3^E1^E2^E3",
                "e2^e3^E1^E2^E3",
            ],
        ),
        ("3,3", 1, &["e1^e2^e3^E1^E2^E3"]),
    ];
    for (key, dim, reps) in data {
        t.dims.insert((*key).to_string(), *dim);
        t.reps
            .insert((*key).to_string(), reps.iter().map(|s| s.to_string()).collect());
    }
    t
}

/// Reference Aeppli data displayed for the Nakamura model at (2,0), (2,2),
/// (0,2).
pub fn nakamura_aeppli_expected() -> ExpectedTable {
    let mut t = ExpectedTable { theory: "aeppli".to_string(), ..Default::default() };
    let data: &[(&str, usize, &[&str])] = &[
        ("2,0", 3, &["x(1,-1)*e1^e2", "x(-1,1)*e1^e3", "e2^e3"]),
        ("0,2", 3, &["x(-1,1)*E1^E2", "x(1,-1)*E1^E3", "E2^E3"]),
        (
            "2,2",
            7,
            &[
                "x(1,-1)*e1^e2^E1^E3",
                "x(1,-1)*e1^e2^E2^E3",
                "x(-1,1)*e1^e3^E1^E2",
                "x(-1,1)*e1^e3^E2^E3",
                "x(-1,1)*e2^e3^E1^E2",
                "x(1,-1)*e2^e3^E1^E3",
                "e2^e3^E2^E3",
            ],
        ),
    ];
    for (key, dim, reps) in data {
        t.dims.insert((*key).to_string(), *dim);
        t.reps
            .insert((*key).to_string(), reps.iter().map(|s| s.to_string()).collect());
    }
    t
}

/// Reference Bott-Chern dimensions of the deformed Nakamura fibers, t ≠ 0.
pub fn family_bc_dims() -> std::collections::BTreeMap<(u8, u8), usize> {
    grid(&[
        (0, 0, 1),
        (1, 0, 1),
        (0, 1, 1),
        (2, 0, 1),
        (1, 1, 3),
        (0, 2, 1),
        (3, 0, 1),
        (2, 1, 3),
        (1, 2, 3),
        (0, 3, 1),
        (3, 1, 1),
        (2, 2, 3),
        (1, 3, 1),
        (3, 2, 1),
        (2, 3, 1),
        (3, 3, 1),
    ])
}

fn orbifold_dolbeault_dims() -> std::collections::BTreeMap<(u8, u8), usize> {
    grid(&[(0, 0, 1), (1, 1, 4), (3, 0, 1), (0, 3, 1), (2, 2, 4), (3, 3, 1)])
}

// ---------------------------------------------------------------------------

fn criterion_1() -> CriterionResult {
    let mut c = Checker::new();
    let cx = catalog::iwasawa_orbifold();
    let want = orbifold_dolbeault_dims();
    for theory in [Theory::Dolbeault, Theory::BottChern, Theory::Aeppli] {
        match compute_table(&cx, theory, 1) {
            Ok(report) => {
                for p in 0..=3u8 {
                    for q in 0..=3u8 {
                        let expect = want.get(&(p, q)).copied().unwrap_or(0);
                        let got = report.dim_at(p, q);
                        c.check(
                            got == expect,
                            format!("orbifold {}({p},{q}) = {got}, expected {expect}", theory.name()),
                        );
                    }
                }
            }
            Err(e) => c.fail(format!("{}: {e}", theory.name())),
        }
    }
    let betti_expect = [1usize, 0, 4, 2, 4, 0, 1];
    for (k, want) in betti_expect.iter().enumerate() {
        match cohomology(&cx, Theory::DeRham, k as u8, 0) {
            Ok(cell) => c.check(
                cell.dim == *want,
                format!("orbifold b_{k} = {}, expected {want}", cell.dim),
            ),
            Err(e) => c.fail(format!("b_{k}: {e}")),
        }
    }
    match ddbar_check(&cx) {
        Ok(report) => {
            c.check(report.injectivity, "orbifold ddbar injectivity formulation");
            c.check(report.subspace_equality, "orbifold ddbar subspace formulation");
            c.check(report.froelicher_equality, "orbifold ddbar Froelicher formulation");
        }
        Err(e) => c.fail(format!("ddbar_check: {e}")),
    }
    c.finish(1, "orbifold", "orbifold cohomology tables and ddbar verdict")
}

fn class_proportional(
    cx: &Complex,
    theory: Theory,
    p: u8,
    q: u8,
    lhs: &Form,
    rhs: &Form,
) -> Result<bool, MasseyError> {
    let a = crate::cohomology::canonical_representative(cx, theory, p, q, lhs)?;
    let b = crate::cohomology::canonical_representative(cx, theory, p, q, rhs)?;
    Ok(!a.is_zero() && a.proportional_to(&b))
}

fn criterion_2() -> CriterionResult {
    let mut c = Checker::new();
    let cx = catalog::iwasawa_orbifold();
    let alpha = pf(3, "e1^E1");
    let beta = pf(3, "e2^E2");
    match abc_massey(&cx, &alpha, &beta, &beta) {
        Ok(result) => {
            c.check(result.verdict == Verdict::NonVanishing, "orbifold ABC-Massey verdict");
            c.check(
                result.indeterminacy.dim() == 0,
                format!("indeterminacy dimension {} == 0", result.indeterminacy.dim()),
            );
            match class_proportional(
                &cx,
                Theory::Aeppli,
                2,
                2,
                &result.representative,
                &pf(3, "e2^e3^E2^E3"),
            ) {
                Ok(ok) => c.check(ok, "representative class is [φ^{23}∧φ̄^{23}] up to scalar"),
                Err(e) => c.fail(format!("class comparison: {e}")),
            }
        }
        Err(e) => c.fail(format!("abc_massey: {e}")),
    }
    c.finish(2, "orbifold-massey", "orbifold ABC-Massey non-vanishing")
}

fn criterion_3() -> CriterionResult {
    let mut c = Checker::new();
    let cx = Complex::full(catalog::nakamura_hp());
    let expected = nakamura_bc_expected();
    match compute_table(&cx, Theory::BottChern, 1) {
        Ok(report) => {
            for d in crate::table::diff_table(&report, &expected, 3) {
                c.check(
                    d.dim_ok,
                    format!(
                        "bc({},{}) dim {} expected {}",
                        d.p, d.q, d.actual_dim, d.expected_dim
                    ),
                );
                c.check(
                    d.reps_ok,
                    format!("bc({},{}) representatives: {}", d.p, d.q, d.note),
                );
                if !d.dim_ok && (d.p, d.q) == (2, 2) {
                    c.note(
                        "note: the reference (2,2) row is known-inconsistent: it is not \
                         closed under conjugation, and the untwisted-sector subcomplex \
                         alone already contributes 5 classes (engine: 5 + 3 + 3 = 11 \
                         across sectors, matching the star dual of aeppli(1,1)). All \
                         other 15 cells and every displayed representative agree. See \
                         README, 'Known reference discrepancy'.",
                    );
                }
            }
        }
        Err(e) => c.fail(format!("bc table: {e}")),
    }
    let aeppli = nakamura_aeppli_expected();
    match compute_table(&cx, Theory::Aeppli, 1) {
        Ok(report) => {
            for (key, dim) in &aeppli.dims {
                let (p, q) = parse_key(key);
                c.check(
                    report.dim_at(p, q) == *dim,
                    format!("aeppli({p},{q}) dim {} expected {dim}", report.dim_at(p, q)),
                );
                let cell = report.cells.iter().find(|x| x.p == p && x.q == q).unwrap();
                match reps_match(&cell.reps, &aeppli.reps[key], 3) {
                    Ok(()) => {}
                    Err(msg) => c.fail(format!("aeppli({p},{q}) representatives: {msg}")),
                }
            }
        }
        Err(e) => c.fail(format!("aeppli table: {e}")),
    }
    match cohomology(&cx, Theory::Dolbeault, 0, 1) {
        Ok(cell) => c.check(cell.dim == 3, format!("h^(0,1)_dolbeault = {}, expected 3", cell.dim)),
        Err(e) => c.fail(format!("h^(0,1): {e}")),
    }
    c.finish(3, "nakamura-tables", "Nakamura Bott-Chern/Aeppli reference tables")
}

fn parse_key(key: &str) -> (u8, u8) {
    let (a, b) = key.split_once(',').expect("p,q key");
    (a.parse().unwrap(), b.parse().unwrap())
}

fn criterion_4() -> CriterionResult {
    let mut c = Checker::new();
    let cx = Complex::full(catalog::nakamura_hp());
    // geometric Bott-Chern formality fails, with the reference witness pair
    match formality_check(&cx, HarmonicFlavor::BottChern) {
        Ok(report) => {
            c.check(!report.formal, "bottChern formality verdict FALSE");
            let left = pf(3, "e1^e2");
            let right = pf(3, "x(-1,1)*e3^E1");
            let witnessed = report.failures.iter().any(|f| {
                (f.left.proportional_to(&left) && f.right.proportional_to(&right))
                    || (f.left.proportional_to(&right) && f.right.proportional_to(&left))
            });
            c.check(witnessed, "witness pair (η^{12}, e^{z̄₁−z₁}η³∧η̄¹) among failures");
            let wedge = left.wedge(&right);
            match cx.model.is_harmonic(&wedge, HarmonicFlavor::BottChern) {
                Ok(h) => c.check(!h, "witness product is not Bott-Chern harmonic"),
                Err(e) => c.fail(format!("witness harmonicity: {e}")),
            }
        }
        Err(e) => c.fail(format!("formality_check: {e}")),
    }
    match ddbar_check(&cx) {
        Ok(report) => c.check(!report.verdict(), "ddbar verdict FALSE"),
        Err(e) => c.fail(format!("ddbar_check: {e}")),
    }
    let a = pf(3, "e1^e2");
    let b = pf(3, "x(-1,1)*e3^E1");
    let g = pf(3, "E1^E2");
    match abc_massey(&cx, &a, &b, &g) {
        Ok(result) => {
            c.check(result.verdict == Verdict::NonVanishing, "ABC-Massey verdict nonVanishing");
            let target = pf(3, "x(-1,1)*e2^e3^E1^E2");
            match class_proportional(&cx, Theory::Aeppli, 2, 2, &result.representative, &target) {
                Ok(ok) => c.check(ok, "representative class [e^{z̄₁−z₁}η^{23}∧η̄^{12}]_A"),
                Err(e) => c.fail(format!("class comparison: {e}")),
            }
            match cx.model.is_harmonic(&result.representative, HarmonicFlavor::Aeppli) {
                Ok(h) => c.check(h, "representative is Aeppli-harmonic"),
                Err(e) => c.fail(format!("harmonicity: {e}")),
            }
            c.check(
                result.indeterminacy.dim() == 2,
                format!(
                    "ideal dimension {} == 2 (four of six products are exact)",
                    result.indeterminacy.dim()
                ),
            );
            c.check(
                !result.indeterminacy.contains(&result.class_coords),
                "ideal membership fails",
            );
        }
        Err(e) => c.fail(format!("abc_massey: {e}")),
    }
    c.finish(4, "nakamura-negative", "Nakamura negative verdicts and ABC-Massey")
}

fn criterion_5() -> CriterionResult {
    let mut c = Checker::new();
    let want = family_bc_dims();
    for (label, t) in [
        ("1/2", Scalar::from_ratio(1, 2)),
        ("i/3", Scalar::from_gauss(0, 1, 1, 3)),
    ] {
        let model = match catalog::nakamura_family(&t) {
            Ok(m) => m,
            Err(e) => {
                c.fail(format!("t={label}: {e}"));
                continue;
            }
        };
        let cx = Complex::full(model);
        match compute_table(&cx, Theory::BottChern, 1) {
            Ok(report) => {
                for p in 0..=3u8 {
                    for q in 0..=3u8 {
                        let expect = want[&(p, q)];
                        c.check(
                            report.dim_at(p, q) == expect,
                            format!(
                                "t={label}: bc({p},{q}) = {}, expected {expect}",
                                report.dim_at(p, q)
                            ),
                        );
                    }
                }
            }
            Err(e) => c.fail(format!("t={label}: bc table: {e}")),
        }
        match ddbar_check(&cx) {
            Ok(r) => c.check(r.verdict(), format!("t={label}: ddbar TRUE")),
            Err(e) => c.fail(format!("t={label}: ddbar: {e}")),
        }
        match formality_check(&cx, HarmonicFlavor::BottChern) {
            Ok(r) => c.check(r.formal, format!("t={label}: bottChern formality TRUE")),
            Err(e) => c.fail(format!("t={label}: formality: {e}")),
        }
    }
    c.finish(5, "nakamura-deformed", "deformed Nakamura fibers satisfy the reference table")
}

fn criterion_6() -> CriterionResult {
    let mut c = Checker::new();
    match catalog::solv_family(&Scalar::one(), &Scalar::zero()) {
        Ok(model) => {
            let cx = Complex::full(model);
            let a = pf(3, "e3");
            let g = pf(3, "E3");
            match dolbeault_massey(&cx, &a, &a, &g) {
                Ok(result) => {
                    c.check(result.verdict == Verdict::NonVanishing, "Dolbeault-Massey nonVanishing");
                    c.check(
                        result.representative.proportional_to(&pf(3, "e1^e3")),
                        "representative proportional to η¹∧η³",
                    );
                    let want = pf(3, "e1").scale(&Scalar::from_gauss(0, 1, -1, 2));
                    c.check(result.primitive_bc == want, "primitive −(i/2)η¹");
                }
                Err(e) => c.fail(format!("dolbeault_massey: {e}")),
            }
        }
        Err(e) => c.fail(format!("solv_family: {e}")),
    }
    c.finish(6, "solv-massey", "solv-family Dolbeault-Massey non-vanishing")
}

fn criterion_7() -> CriterionResult {
    let mut c = Checker::new();
    // solv-00 + deformation → solv family equations
    let base = catalog::solv_family(&Scalar::zero(), &Scalar::zero()).unwrap();
    for (label, t1, t2) in [
        ("(1,1/2)", Scalar::one(), Scalar::from_ratio(1, 2)),
        ("(1,i/3)", Scalar::one(), Scalar::from_gauss(0, 1, 1, 3)),
    ] {
        let coframe = vec![
            pf(3, "e1").add(&pf(3, "E3").scale(&t1)),
            pf(3, "e2"),
            pf(3, "e3").add(&pf(3, "E3").scale(&t2)),
        ];
        match catalog::derive_deformed_structure(&base, &coframe) {
            Ok(derived) => {
                let hard = catalog::solv_family(&t1, &t2).unwrap();
                c.check(
                    derived.d_eta == hard.d_eta,
                    format!("solv deformation {label}: derived equations match"),
                );
            }
            Err(e) => c.fail(format!("solv deformation {label}: {e}")),
        }
    }
    // Nakamura base + (0,1)-vector deformation → family equations
    let nak = catalog::nakamura_hp();
    for (label, t) in [
        ("1/2", Scalar::from_ratio(1, 2)),
        ("i/3", Scalar::from_gauss(0, 1, 1, 3)),
    ] {
        let coframe = vec![pf(3, "e1").add(&pf(3, "E1").scale(&t)), pf(3, "e2"), pf(3, "e3")];
        match catalog::derive_deformed_structure(&nak, &coframe) {
            Ok(derived) => {
                let hard = catalog::nakamura_family(&t).unwrap();
                c.check(
                    derived.d_eta == hard.d_eta && derived.mu == hard.mu,
                    format!("Nakamura deformation t={label}: derived equations and μ match"),
                );
            }
            Err(e) => c.fail(format!("Nakamura deformation t={label}: {e}")),
        }
    }
    // τ-coframe change reproduces the t₂-presentation
    let t2 = Scalar::from_ratio(1, 2);
    let solv = catalog::solv_family(&Scalar::one(), &t2).unwrap();
    let ratio = &Scalar::one() / &t2;
    let tau = vec![
        pf(3, "e3").scale(&Scalar::from_gauss(0, 1, 2, 1)),
        pf(3, "e1").add(&pf(3, "e3").scale(&-&ratio)),
        pf(3, "e2"),
    ];
    match catalog::change_coframe(&solv, &tau) {
        Ok(derived) => {
            let hard = catalog::solv_t2_family(&t2).unwrap();
            c.check(derived.d_eta == hard.d_eta, "τ-coframe change matches the t₂ system");
        }
        Err(e) => c.fail(format!("change_coframe: {e}")),
    }
    c.finish(7, "deformations", "structure-equation re-derivations agree exactly")
}

fn criterion_8() -> CriterionResult {
    let mut c = Checker::new();
    match catalog::fixed_locus(&PointAction::sigma()) {
        FixedLocus::Points(points) => {
            c.check(points.len() == 16, format!("sigma fixed classes = {}", points.len()));
            let zero = Scalar::zero();
            let half = Scalar::from_ratio(1, 2);
            let half_i = Scalar::from_gauss(0, 1, 1, 2);
            let both = &half + &half_i;
            for z3 in [zero, half, half_i, both] {
                let hit = points
                    .iter()
                    .any(|p| p[0].is_zero() && p[1].is_zero() && p[2] == z3);
                c.check(hit, format!("fixed point (0, 0, {z3}) present"));
            }
        }
        other => c.fail(format!("sigma fixed locus: unexpected {other:?}")),
    }
    match catalog::fixed_locus(&PointAction::psi()) {
        FixedLocus::Curves(bases) => {
            c.check(bases.len() == 8, format!("psi fixed curves = {}", bases.len()));
            let both = &Scalar::from_ratio(1, 2) + &Scalar::from_gauss(0, 1, 1, 2);
            c.check(
                bases.contains(&(Scalar::zero(), Scalar::zero())),
                "curve base (0, 0) present",
            );
            c.check(
                bases.contains(&(both.clone(), both.clone())),
                "curve base (1/2+i/2, 1/2+i/2) present",
            );
        }
        other => c.fail(format!("psi fixed locus: unexpected {other:?}")),
    }
    c.finish(8, "lattice", "lattice fixed points and fixed curves")
}

fn catalog_complexes() -> Vec<Complex> {
    vec![
        Complex::full(catalog::iwasawa()),
        catalog::iwasawa_orbifold(),
        Complex::full(catalog::nakamura_hp()),
        Complex::full(catalog::nakamura_family(&Scalar::from_ratio(1, 2)).unwrap()),
        Complex::full(catalog::solv_family(&Scalar::one(), &Scalar::zero()).unwrap()),
        Complex::full(catalog::solv_t2_family(&Scalar::from_ratio(1, 2)).unwrap()),
    ]
}

fn criterion_9() -> CriterionResult {
    use num_traits::Signed;
    use rand::{Rng, SeedableRng};
    let mut c = Checker::new();
    for cx in catalog_complexes() {
        let m = &cx.model;
        let name = m.name.clone();
        // d² = 0 and star identities on every basis monomial, every sector
        let mut dd_ok = true;
        let mut star_ok = true;
        let mut positive_ok = true;
        for &s in &m.sectors {
            for p in 0..=m.rank {
                for q in 0..=m.rank {
                    for mono in cx.basis(p, q, s) {
                        let x = Form::from_monomial(mono, Scalar::one());
                        if !m.d(&m.d(&x)).is_zero() {
                            dd_ok = false;
                        }
                        let ss = m.hodge_star(&m.hodge_star(&x).unwrap()).unwrap();
                        let expect = if (p + q) % 2 == 1 { x.neg() } else { x.clone() };
                        if ss != expect {
                            star_ok = false;
                        }
                        let g = m.inner_product(&x, &x);
                        if !(g.is_real() && g.re.is_positive()) {
                            positive_ok = false;
                        }
                    }
                }
            }
        }
        c.check(dd_ok, format!("{name}: d∘d = 0 on all monomials"));
        c.check(star_ok, format!("{name}: ∗∘∗ = (−1)^(p+q) on all monomials"));
        c.check(positive_ok, format!("{name}: g(x,x) > 0 on all monomials"));

        // Leibniz on seeded random pure-degree pairs
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let mut leibniz_ok = true;
        for _ in 0..20 {
            let p1 = rng.gen_range(0..=2u8);
            let q1 = rng.gen_range(0..=2u8);
            let s = m.sectors[rng.gen_range(0..m.sectors.len())];
            let mut x = Form::zero();
            for mono in cx.basis(p1, q1, s) {
                if rng.gen_bool(0.5) {
                    x.add_term(mono, Scalar::from_int(rng.gen_range(-3..=3)));
                }
            }
            let mut y = Form::zero();
            for mono in cx.basis(1, 0, Sector::TRIVIAL) {
                if rng.gen_bool(0.5) {
                    y.add_term(mono, Scalar::from_int(rng.gen_range(-3..=3)));
                }
            }
            let sign = if (p1 + q1) % 2 == 1 { -Scalar::one() } else { Scalar::one() };
            let lhs = m.d(&x.wedge(&y));
            let rhs = m.d(&x).wedge(&y).add(&x.wedge(&m.d(&y)).scale(&sign));
            if lhs != rhs {
                leibniz_ok = false;
            }
        }
        c.check(leibniz_ok, format!("{name}: Leibniz rule on random pairs"));

        // dim cohomology == dim harmonic space for every theory and cell
        let mut hodge_ok = true;
        for p in 0..=m.rank {
            for q in 0..=m.rank {
                for theory in [Theory::Dolbeault, Theory::BottChern, Theory::Aeppli] {
                    match (
                        cohomology(&cx, theory, p, q),
                        harmonic_space(&cx, theory.flavor(), p, q),
                    ) {
                        (Ok(cell), Ok(h)) => {
                            if cell.dim != h.dim() {
                                hodge_ok = false;
                            }
                        }
                        _ => hodge_ok = false,
                    }
                }
            }
        }
        for k in 0..=2 * m.rank {
            match cohomology(&cx, Theory::DeRham, k, 0) {
                Ok(_) => {}
                Err(_) => hodge_ok = false,
            }
        }
        c.check(hodge_ok, format!("{name}: dim cohomology = dim harmonic, all theories"));

        match duality_checks(&cx) {
            Ok(r) => c.check(r.all_hold(), format!("{name}: star and conjugation dualities")),
            Err(e) => c.fail(format!("{name}: duality: {e}")),
        }
        match froelicher_check(&cx) {
            Ok(_) => {}
            Err(e) => c.fail(format!("{name}: Froelicher: {e}")),
        }
        match ddbar_check(&cx) {
            Ok(_) => {}
            Err(e) => c.fail(format!("{name}: ddbar formulations: {e}")),
        }
    }

    // Massey primitive-independence for the three reference products
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4242);
    let solv = Complex::full(catalog::solv_family(&Scalar::one(), &Scalar::zero()).unwrap());
    let a = pf(3, "e3");
    let g = pf(3, "E3");
    let base = dolbeault_massey(&solv, &a, &a, &g).unwrap();
    let mut stable = true;
    for _ in 0..50 {
        let mut pert = Form::zero();
        for gen in ["e2", "e3"] {
            if rng.gen_bool(0.6) {
                pert = pert.add(&pf(3, gen).scale(&Scalar::from_int(rng.gen_range(-5..=5))));
            }
        }
        let f_bc = base.primitive_bc.add(&pert);
        let rep = base
            .primitive_ab
            .wedge(&g)
            .add(&a.wedge(&f_bc).scale(&-Scalar::one()));
        let coords =
            crate::cohomology::class_coordinates(&solv, Theory::Dolbeault, 2, 0, &rep).unwrap();
        if base.indeterminacy.contains(&coords) {
            stable = false;
        }
    }
    c.check(stable, "solv Massey verdict stable under 50 primitive perturbations");

    let orb = catalog::iwasawa_orbifold();
    let alpha = pf(3, "e1^E1");
    let beta = pf(3, "e2^E2");
    let base = abc_massey(&orb, &alpha, &beta, &beta).unwrap();
    let mut stable = true;
    for _ in 0..50 {
        // perturb g_{αβ} by ker ∂∂̄ elements of bidegree (1,1)
        let mut pert = Form::zero();
        for text in ["e1^E1", "e1^E2", "e2^E1", "e2^E2"] {
            if rng.gen_bool(0.6) {
                pert = pert.add(&pf(3, text).scale(&Scalar::from_int(rng.gen_range(-5..=5))));
            }
        }
        assert!(orb.model.del_delbar(&pert).unwrap().is_zero());
        let g_ab = base.primitive_ab.add(&pert);
        let rep = alpha
            .wedge(&base.primitive_bc)
            .sub(&g_ab.wedge(&beta));
        let coords =
            crate::cohomology::class_coordinates(&orb, Theory::Aeppli, 2, 2, &rep).unwrap();
        if base.indeterminacy.contains(&coords) {
            stable = false;
        }
    }
    c.check(stable, "orbifold ABC-Massey verdict stable under 50 primitive perturbations");

    let nak = Complex::full(catalog::nakamura_hp());
    let a = pf(3, "e1^e2");
    let b = pf(3, "x(-1,1)*e3^E1");
    let g = pf(3, "E1^E2");
    let base = abc_massey(&nak, &a, &b, &g).unwrap();
    let mut stable = true;
    for _ in 0..50 {
        // perturb g_{αβ} by (2,0) elements of its sector killed by ∂∂̄
        let mut pert = Form::zero();
        for text in ["x(-1,1)*e1^e2", "x(-1,1)*e1^e3"] {
            if rng.gen_bool(0.6) {
                pert = pert.add(&pf(3, text).scale(&Scalar::from_int(rng.gen_range(-5..=5))));
            }
        }
        assert!(nak.model.del_delbar(&pert).unwrap().is_zero());
        let g_ab = base.primitive_ab.add(&pert);
        let rep = a.wedge(&base.primitive_bc).sub(&g_ab.wedge(&g));
        let coords =
            crate::cohomology::class_coordinates(&nak, Theory::Aeppli, 2, 2, &rep).unwrap();
        if base.indeterminacy.contains(&coords) {
            stable = false;
        }
    }
    c.check(stable, "Nakamura ABC-Massey verdict stable under 50 primitive perturbations");

    c.finish(9, "properties", "property suites on every catalog model")
}

/// One sweep check verdict, as displayed in the sweep table.
pub fn sweep_check(cx: &Complex, check: &str) -> String {
    match check {
        "ddbar" => match ddbar_check(cx) {
            Ok(r) => if r.verdict() { "TRUE" } else { "FALSE" }.to_string(),
            Err(e) => format!("error({e})"),
        },
        "bc-formality" => match formality_check(cx, HarmonicFlavor::BottChern) {
            Ok(r) => if r.formal { "TRUE" } else { "FALSE" }.to_string(),
            Err(e) => format!("error({e})"),
        },
        "dolbeault-formality" => match formality_check(cx, HarmonicFlavor::Dolbeault) {
            Ok(r) => if r.formal { "TRUE" } else { "FALSE" }.to_string(),
            Err(e) => format!("error({e})"),
        },
        "abc-massey" => {
            let a = pf(3, "e1^e2");
            let b = pf(3, "x(-1,1)*e3^E1");
            let g = pf(3, "E1^E2");
            match abc_massey(cx, &a, &b, &g) {
                Ok(r) => r.verdict.name().to_string(),
                Err(MasseyError::NotClosed(_)) | Err(MasseyError::ProductsNotVanishing(_)) => {
                    "undefined".to_string()
                }
                Err(e) => format!("error({e})"),
            }
        }
        "dolbeault-massey" => {
            let a = pf(3, "e3");
            let g = pf(3, "E3");
            match dolbeault_massey(cx, &a, &a, &g) {
                Ok(r) => r.verdict.name().to_string(),
                Err(MasseyError::NotClosed(_)) | Err(MasseyError::ProductsNotVanishing(_)) => {
                    "undefined".to_string()
                }
                Err(e) => format!("error({e})"),
            }
        }
        other => format!("unknown-check({other})"),
    }
}

fn criterion_10() -> CriterionResult {
    let mut c = Checker::new();
    let values = [
        ("0", Scalar::zero()),
        ("1/2", Scalar::from_ratio(1, 2)),
        ("i/3", Scalar::from_gauss(0, 1, 1, 3)),
        ("3/5", Scalar::from_ratio(3, 5)),
    ];
    for (label, t) in &values {
        let cx = match catalog::nakamura_family(t) {
            Ok(m) => Complex::full(m),
            Err(e) => {
                c.fail(format!("t={label}: {e}"));
                continue;
            }
        };
        let ddbar = sweep_check(&cx, "ddbar");
        let formality = sweep_check(&cx, "bc-formality");
        let massey = sweep_check(&cx, "abc-massey");
        c.note(format!(
            "nakamura_family t={label}: ddbar={ddbar} bc-formality={formality} abc-massey={massey}"
        ));
        if t.is_zero() {
            c.check(ddbar == "FALSE", format!("t={label}: ddbar FALSE"));
            c.check(formality == "FALSE", format!("t={label}: formality FALSE"));
            c.check(massey == "nonVanishing", format!("t={label}: massey nonVanishing"));
        } else {
            c.check(ddbar == "TRUE", format!("t={label}: ddbar TRUE"));
            c.check(formality == "TRUE", format!("t={label}: formality TRUE"));
            c.check(
                massey == "vanishes" || massey == "undefined",
                format!("t={label}: massey vanishes or undefined, got {massey}"),
            );
        }
    }
    // solv family geometric Dolbeault formality for t ≠ 0 rests on external
    // tables: computed and reported, not asserted.
    if let Ok(m) = catalog::solv_t2_family(&Scalar::from_ratio(1, 2)) {
        let cx = Complex::full(m);
        let verdict = sweep_check(&cx, "dolbeault-formality");
        c.note(format!(
            "solv_t2_family t2=1/2: dolbeault-formality={verdict} (reported, not asserted)"
        ));
    }
    c.finish(10, "sweep", "deformation sweep verdict flips at t = 0")
}

const RUNNERS: &[(u8, &str, fn() -> CriterionResult)] = &[
    (1, "orbifold", criterion_1),
    (2, "orbifold-massey", criterion_2),
    (3, "nakamura-tables", criterion_3),
    (4, "nakamura-negative", criterion_4),
    (5, "nakamura-deformed", criterion_5),
    (6, "solv-massey", criterion_6),
    (7, "deformations", criterion_7),
    (8, "lattice", criterion_8),
    (9, "properties", criterion_9),
    (10, "sweep", criterion_10),
];

/// Run the acceptance criteria, optionally filtered by a tag substring.
pub fn run_all(only: Option<&str>) -> Vec<CriterionResult> {
    RUNNERS
        .iter()
        .filter(|(_, tag, _)| only.map_or(true, |f| tag.contains(f)))
        .map(|(_, _, run)| run())
        .collect()
}

pub fn run_one(id: u8) -> Option<CriterionResult> {
    RUNNERS
        .iter()
        .find(|(rid, _, _)| *rid == id)
        .map(|(_, _, run)| run())
}
