//! Built-in models and families, coframe deformations, finite diagonal
//! group actions with their invariant subcomplexes, and fixed-point
//! enumeration for the Heisenberg lattice.

use crate::calculus::Model;
use crate::cohomology::{Complex, CohomologyError};
use crate::exterior::{basis_monomials, Form, GaussInt, Monomial, Sector};
use crate::scalar::Scalar;
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown model name '{0}'")]
    UnknownModel(String),
    #[error("missing parameter '{0}' for this family")]
    MissingParameter(String),
    #[error("inadmissible parameter: {0}")]
    InadmissibleParameter(String),
    #[error("coframe change is singular")]
    SingularCoframe,
    #[error("deformed structure fails integrability: {0}")]
    Integrability(String),
    #[error("unknown action '{0}' on this model")]
    UnknownAction(String),
    #[error("action does not commute with d: {0}")]
    ActionNotCompatible(String),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// A finite diagonal group action on the coframe: generator `i` is scaled
/// by `eigenvalues[i]`, antiholomorphic generators by the conjugate, and
/// characters are untouched (actions are configured on trivial-sector
/// models only).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    pub name: String,
    pub order: u32,
    pub eigenvalues: Vec<Scalar>,
}

impl GroupAction {
    pub fn new(name: &str, order: u32, eigenvalues: Vec<Scalar>) -> GroupAction {
        GroupAction { name: name.to_string(), order, eigenvalues }
    }

    /// Eigenvalue of the induced action on a monomial: the product of the
    /// coframe eigenvalues over holomorphic factors times conjugates over
    /// antiholomorphic factors.
    pub fn eigenvalue_on(&self, m: &Monomial) -> Scalar {
        let mut e = Scalar::one();
        for (k, lambda) in self.eigenvalues.iter().enumerate() {
            if m.holo >> k & 1 == 1 {
                e = &e * lambda;
            }
            if m.anti >> k & 1 == 1 {
                e = &e * &lambda.conj();
            }
        }
        e
    }

    /// Pullback of a form under the action.
    pub fn apply(&self, f: &Form) -> Form {
        let mut out = Form::zero();
        for (m, c) in f.terms() {
            out.add_term(*m, &self.eigenvalue_on(m) * c);
        }
        out
    }

    /// Structural checks against a model: eigenvalues are fourth roots of
    /// unity, the stated order kills them, and pullback commutes with d.
    pub fn check_on(&self, model: &Model) -> Vec<String> {
        let mut out = Vec::new();
        if self.eigenvalues.len() != model.rank as usize {
            out.push(format!(
                "action '{}' has {} eigenvalues for rank {}",
                self.name,
                self.eigenvalues.len(),
                model.rank
            ));
            return out;
        }
        let i = Scalar::i();
        for (k, lambda) in self.eigenvalues.iter().enumerate() {
            let mut allowed = false;
            let mut v = Scalar::one();
            for _ in 0..4 {
                if *lambda == v {
                    allowed = true;
                }
                v = &v * &i;
            }
            if !allowed {
                out.push(format!(
                    "action '{}' eigenvalue {} on generator {} is not in {{1, i, -1, -i}}",
                    self.name,
                    lambda,
                    k + 1
                ));
            }
            let mut pow = Scalar::one();
            for _ in 0..self.order {
                pow = &pow * lambda;
            }
            if !pow.is_one() {
                out.push(format!(
                    "action '{}' eigenvalue on generator {} does not have order dividing {}",
                    self.name,
                    k + 1,
                    self.order
                ));
            }
        }
        if !model.sectors.iter().all(|s| s.is_trivial()) {
            out.push(format!(
                "action '{}' requires a trivial-sector model",
                self.name
            ));
            return out;
        }
        for k in 0..model.rank {
            let gen = Form::holo_gen(k + 1);
            let lhs = model.d(&self.apply(&gen));
            let rhs = self.apply(&model.d(&gen));
            if lhs != rhs {
                out.push(format!(
                    "action '{}' does not commute with d on generator {}",
                    self.name,
                    k + 1
                ));
            }
        }
        out
    }
}

fn sector_plus() -> Sector {
    Sector::new(GaussInt::new(1, 0), GaussInt::new(-1, 0))
}

fn sector_minus() -> Sector {
    Sector::new(GaussInt::new(-1, 0), GaussInt::new(1, 0))
}

fn pf(text: &str) -> Form {
    crate::formexpr::parse_form(text, 6).expect("builtin forms parse")
}

/// The Iwasawa nilmanifold: dφ³ = −φ^{12}, trivial sector, with the
/// order-4 diagonal action σ and its square ψ installed.
pub fn iwasawa() -> Model {
    let d_eta = vec![Form::zero(), Form::zero(), pf("-e1^e2")];
    Model::new("iwasawa", 3, d_eta, Form::zero(), vec![Sector::TRIVIAL])
        .with_action(GroupAction::new(
            "sigma",
            4,
            vec![Scalar::i(), Scalar::i(), -Scalar::one()],
        ))
        .with_action(GroupAction::new(
            "psi",
            2,
            vec![-Scalar::one(), -Scalar::one(), Scalar::one()],
        ))
}

/// σ-invariant subcomplex of the Iwasawa model.
pub fn iwasawa_orbifold() -> Complex {
    invariant_subcomplex(&iwasawa(), "sigma").expect("builtin orbifold is valid")
}

/// The holomorphically parallelizable Nakamura model: dη² = −η^{12},
/// dη³ = η^{13}, character potential μ = η¹, sectors {0, ±(1,−1)}.
pub fn nakamura_hp() -> Model {
    let d_eta = vec![Form::zero(), pf("-e1^e2"), pf("e1^e3")];
    Model::new(
        "nakamura_hp",
        3,
        d_eta,
        pf("e1"),
        vec![Sector::TRIVIAL, sector_plus(), sector_minus()],
    )
}

fn modulus_sq(t: &Scalar) -> BigRational {
    t.norm_sq()
}

/// Deformed Nakamura fiber for `|t| < 1`, in the deformed coframe
/// `η_t¹ = η¹ + t η̄¹, η_t² = η², η_t³ = η³`. Structure equations are the
/// ones derive_deformed_structure produces from that coframe:
///
/// ```text
/// dη_t¹ = 0
/// dη_t² = −λ η_t^{12} − λt η_t²∧η̄_t¹
/// dη_t³ =  λ η_t^{13} + λt η_t³∧η̄_t¹      with λ = 1/(1−|t|²)
/// ```
///
/// and μ = λ η_t¹ − λt η̄_t¹.
pub fn nakamura_family(t: &Scalar) -> Result<Model, CatalogError> {
    let s = modulus_sq(t);
    if s >= BigRational::one() {
        return Err(CatalogError::InadmissibleParameter(format!(
            "nakamura_family requires |t| < 1, got t = {t}"
        )));
    }
    let lam = Scalar::from_rational((BigRational::one() - &s).recip());
    let tau = t * &lam;
    let d2 = pf("-e1^e2").scale(&lam).add(&pf("e2^E1").scale(&-&tau));
    let d3 = pf("e1^e3").scale(&lam).add(&pf("e3^E1").scale(&tau));
    let mu = pf("e1").scale(&lam).add(&pf("E1").scale(&-&tau));
    let mut m = Model::new(
        "nakamura_family",
        3,
        vec![Form::zero(), d2, d3],
        mu,
        vec![Sector::TRIVIAL, sector_plus(), sector_minus()],
    );
    m.name = format!("nakamura_family(t={t})");
    Ok(m)
}

/// The base solvmanifold structure `dη¹ = 2i η^{13}, dη² = −2i η^{23}`,
/// deformed by `η_t¹ = η¹ + t₁ η̄³, η_t³ = η³ + t₂ η̄³` for `|t₂| < 1`:
///
/// ```text
/// dη_t¹ = 2iλ η_t^{13} − 2iλt₂ η_t¹∧η̄_t³ + 2iλt₁ η_t³∧η̄_t³
/// dη_t² = −2iλ η_t^{23} + 2iλt₂ η_t²∧η̄_t³
/// dη_t³ = 0                          with λ = 1/(1−|t₂|²)
/// ```
pub fn solv_family(t1: &Scalar, t2: &Scalar) -> Result<Model, CatalogError> {
    let s = modulus_sq(t2);
    if s >= BigRational::one() {
        return Err(CatalogError::InadmissibleParameter(format!(
            "solv_family requires |t2| < 1, got t2 = {t2}"
        )));
    }
    let lam = Scalar::from_rational((BigRational::one() - &s).recip());
    let two_i = Scalar::from_gauss(0, 1, 2, 1);
    let c = &two_i * &lam;
    let d1 = pf("e1^e3")
        .scale(&c)
        .add(&pf("e1^E3").scale(&-&(&c * t2)))
        .add(&pf("e3^E3").scale(&(&c * t1)));
    let d2 = pf("e2^e3").scale(&-&c).add(&pf("e2^E3").scale(&(&c * t2)));
    let mut m = Model::new(
        "solv_family",
        3,
        vec![d1, d2, Form::zero()],
        Form::zero(),
        vec![Sector::TRIVIAL],
    );
    m.name = format!("solv_family(t1={t1},t2={t2})");
    Ok(m)
}

/// The τ-coframe presentation of the solv family for `0 < |t₂| < 1`:
///
/// ```text
/// dτ¹ = 0
/// dτ² = −λ τ^{12} + λt₂ τ²∧τ̄¹
/// dτ³ =  λ τ^{13} − λt₂ τ³∧τ̄¹       with λ = 1/(1−|t₂|²)
/// ```
pub fn solv_t2_family(t2: &Scalar) -> Result<Model, CatalogError> {
    let s = modulus_sq(t2);
    if s >= BigRational::one() {
        return Err(CatalogError::InadmissibleParameter(format!(
            "solv_t2_family requires |t2| < 1, got t2 = {t2}"
        )));
    }
    let lam = Scalar::from_rational((BigRational::one() - &s).recip());
    let tau = t2 * &lam;
    let d2 = pf("-e1^e2").scale(&lam).add(&pf("e2^E1").scale(&tau));
    let d3 = pf("e1^e3").scale(&lam).add(&pf("e3^E1").scale(&-&tau));
    let mut m = Model::new(
        "solv_t2_family",
        3,
        vec![Form::zero(), d2, d3],
        Form::zero(),
        vec![Sector::TRIVIAL],
    );
    m.name = format!("solv_t2_family(t2={t2})");
    Ok(m)
}

/// Substitute each coframe generator by a 1-form: generator `e(i)` maps to
/// `subst[i-1]`, `E(i)` to the conjugate of `subst[i-1]`... here `subst`
/// has length 2n and covers holo then anti slots explicitly.
fn substitute_generators(f: &Form, n: u8, subst: &[Form]) -> Form {
    let mut out = Form::zero();
    for (m, c) in f.terms() {
        let mut acc = Form::from_monomial(Monomial::new(m.sector, 0, 0), c.clone());
        for k in 0..n {
            if m.holo >> k & 1 == 1 {
                acc = acc.wedge(&subst[k as usize]);
            }
        }
        for k in 0..n {
            if m.anti >> k & 1 == 1 {
                acc = acc.wedge(&subst[(n + k) as usize]);
            }
        }
        out = out.add(&acc);
    }
    out
}

/// Solve for the old coframe in terms of the new one. `new_coframe` gives
/// the new (1,0)-generators over the old coframe; the new (0,1)-generators
/// are their conjugates. Returns, for each old generator slot (η¹..η^n,
/// η̄¹..η̄^n), its expression in the new coframe.
fn invert_coframe(n: u8, new_coframe: &[Form]) -> Result<Vec<Form>, CatalogError> {
    use crate::linalg::Mat;
    let dim = 2 * n as usize;
    // rows: new generators over old-generator coordinates
    let mut rows = Vec::with_capacity(dim);
    let coord = |f: &Form| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); dim];
        for (m, c) in f.terms() {
            for k in 0..n {
                if m.holo >> k & 1 == 1 {
                    v[k as usize] = c.clone();
                }
                if m.anti >> k & 1 == 1 {
                    v[(n + k) as usize] = c.clone();
                }
            }
        }
        v
    };
    for f in new_coframe {
        rows.push(coord(f));
    }
    for f in new_coframe {
        rows.push(coord(&f.conjugate()));
    }
    let a = Mat::from_rows(rows).transpose();
    // old_j = Σ_k inv[j][k] · new_k, i.e. solve A·x = e_j where A columns are
    // the new generators over old coordinates... A as built has A[i][k] =
    // coefficient of old generator i in new generator k, so old = A^{-T}? We
    // solve directly: for each old generator j, find x with Σ_k x_k new_k = old_j.
    let mut out = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut e = vec![Scalar::zero(); dim];
        e[j] = Scalar::one();
        let x = a.solve(&e).ok_or(CatalogError::SingularCoframe)?;
        let mut f = Form::zero();
        for (k, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let gen = if k < n as usize {
                Form::holo_gen(k as u8 + 1)
            } else {
                Form::anti_gen((k - n as usize) as u8 + 1)
            };
            f = f.add(&gen.scale(c));
        }
        out.push(f);
    }
    Ok(out)
}

/// Express the structure equations of a deformed coframe. `new_coframe`
/// lists the new (1,0)-forms over the base coframe; d of each is computed
/// in the base model, rewritten in the new coframe, split by new bidegree,
/// and checked for integrability. The character potential is rewritten too.
pub fn derive_deformed_structure(base: &Model, new_coframe: &[Form]) -> Result<Model, CatalogError> {
    let n = base.rank;
    assert_eq!(new_coframe.len(), n as usize, "need n new (1,0)-forms");
    let old_in_new = invert_coframe(n, new_coframe)?;
    let mut d_eta = Vec::with_capacity(n as usize);
    for f in new_coframe {
        let df_old = base.d(f);
        let df_new = substitute_generators(&df_old, n, &old_in_new);
        if !df_new.project_bidegree(0, 2).is_zero() {
            return Err(CatalogError::Integrability(format!(
                "(0,2)-component {:?}",
                df_new.project_bidegree(0, 2)
            )));
        }
        d_eta.push(df_new);
    }
    let mu = substitute_generators(&base.mu, n, &old_in_new);
    let mut m = Model::new(&format!("{}~deformed", base.name), n, d_eta, mu, base.sectors.clone());
    m.metric = base.metric.clone();
    let report = m.validate();
    if !report.is_ok() {
        return Err(CatalogError::Integrability(report.failures.join("; ")));
    }
    Ok(m)
}

/// Rewrite the structure equations in a new holomorphic coframe τ (no
/// antiholomorphic mixing). A special case of [`derive_deformed_structure`].
pub fn change_coframe(base: &Model, tau: &[Form]) -> Result<Model, CatalogError> {
    for f in tau {
        if !f.is_pure(1, 0) {
            return Err(CatalogError::InadmissibleParameter(
                "change_coframe requires (1,0)-forms".to_string(),
            ));
        }
    }
    derive_deformed_structure(base, tau)
}

/// The eigenvalue-1 subcomplex of a named action, with d- and star-closure
/// verified by construction.
pub fn invariant_subcomplex(model: &Model, action_name: &str) -> Result<Complex, CatalogError> {
    let action = model
        .actions
        .get(action_name)
        .ok_or_else(|| CatalogError::UnknownAction(action_name.to_string()))?
        .clone();
    let problems = action.check_on(model);
    if !problems.is_empty() {
        return Err(CatalogError::ActionNotCompatible(problems.join("; ")));
    }
    let mut keep = BTreeSet::new();
    for &s in &model.sectors {
        for p in 0..=model.rank {
            for q in 0..=model.rank {
                for m in basis_monomials(model.rank, p, q, s) {
                    if action.eigenvalue_on(&m).is_one() {
                        keep.insert(m);
                    }
                }
            }
        }
    }
    let mut named = model.clone();
    named.name = format!("{}/{}", model.name, action_name);
    Ok(Complex::restricted(named, keep)?)
}

// ---------------------------------------------------------------------------
// Lattice fixed-point enumeration for the Heisenberg ⋆-product.
// ---------------------------------------------------------------------------

/// A point of C³ with Gaussian-rational coordinates.
pub type Point = [Scalar; 3];

/// `z ⋆ w = (z₁+w₁, z₂+w₂, z₃ + z₁·w₂ + w₃)`.
fn star_product(z: &Point, w: &Point) -> Point {
    [
        &z[0] + &w[0],
        &z[1] + &w[1],
        &(&z[2] + &(&z[0] * &w[1])) + &w[2],
    ]
}

fn is_gauss_integer(s: &Scalar) -> bool {
    s.re.denom().is_one() && s.im.denom().is_one()
}

/// Fractional part of a Gaussian rational, componentwise into [0,1).
fn frac(s: &Scalar) -> Scalar {
    Scalar::new(&s.re - s.re.floor(), &s.im - s.im.floor())
}

/// Integer part dropped by [`frac`].
fn gauss_floor(s: &Scalar) -> Scalar {
    Scalar::new(s.re.floor(), s.im.floor())
}

/// Canonical representative of a lattice class under the left ⋆-action:
/// translate z₁ and z₂ into [0,1)², then z₃ (the z₁-translation shears z₃
/// by λ₁·z₂ first). Two points are ⋆-equivalent iff they normalize to the
/// same triple.
fn normalize_point(z: &Point) -> Point {
    let l1 = -&gauss_floor(&z[0]);
    let l2 = -&gauss_floor(&z[1]);
    let sheared = &z[2] + &(&l1 * &z[1]);
    let l3 = -&gauss_floor(&sheared);
    star_product(&[l1, l2, l3], z)
}

fn dedup_points(points: Vec<Point>) -> Vec<Point> {
    let mut classes: Vec<Point> = Vec::new();
    for p in points.into_iter().map(|p| normalize_point(&p)) {
        if !classes.contains(&p) {
            classes.push(p);
        }
    }
    classes
}

/// Result of a fixed-locus enumeration on the Heisenberg quotient.
#[derive(Clone, Debug)]
pub enum FixedLocus {
    /// Every point is fixed (identity-like action).
    NotIsolated,
    /// Isolated fixed points, as lattice classes.
    Points(Vec<Point>),
    /// Fixed curves `{(z₁⁰, z₂⁰, z₃) : z₃ ∈ C}`, listed by base point.
    Curves(Vec<(Scalar, Scalar)>),
}

/// Diagonal point action `z ↦ (u₁z₁, u₂z₂, u₃z₃)` with `u₃ = u₁u₂` so the
/// ⋆-product is respected.
#[derive(Clone, Debug)]
pub struct PointAction {
    pub name: String,
    pub u: [Scalar; 3],
}

impl PointAction {
    pub fn sigma() -> PointAction {
        PointAction {
            name: "sigma".into(),
            u: [Scalar::i(), Scalar::i(), -Scalar::one()],
        }
    }

    pub fn psi() -> PointAction {
        PointAction {
            name: "psi".into(),
            u: [-Scalar::one(), -Scalar::one(), Scalar::one()],
        }
    }

    pub fn identity() -> PointAction {
        PointAction {
            name: "identity".into(),
            u: [Scalar::one(), Scalar::one(), Scalar::one()],
        }
    }

    pub fn from_name(name: &str) -> Option<PointAction> {
        match name {
            "sigma" => Some(PointAction::sigma()),
            "psi" => Some(PointAction::psi()),
            "identity" | "id" => Some(PointAction::identity()),
            _ => None,
        }
    }
}

/// Residues of Z[i] modulo 2Z[i]: {0, 1, i, 1+i}.
fn gamma_residues() -> Vec<Scalar> {
    vec![
        Scalar::zero(),
        Scalar::one(),
        Scalar::i(),
        &Scalar::one() + &Scalar::i(),
    ]
}

/// Enumerate the fixed locus of a diagonal action on the Heisenberg
/// quotient by iterating lattice residues and deduplicating modulo the
/// ⋆-action. Exact arithmetic over quarter-integers.
pub fn fixed_locus(action: &PointAction) -> FixedLocus {
    let one = Scalar::one();
    let [u1, u2, u3] = action.u.clone();
    if u1.is_one() && u2.is_one() && u3.is_one() {
        return FixedLocus::NotIsolated;
    }
    assert!(
        (&u1 * &u2) == u3 || (!u1.is_one() && !u2.is_one() && u3.is_one()),
        "supported actions respect the star product"
    );

    if u3.is_one() {
        // z₃ free: fixed curves with bases z_k = γ_k/(u_k − 1), constrained
        // by ∃γ₃ ∈ Z[i] with 0 = γ₁z₂ + γ₃, i.e. γ₁z₂ ∈ Z[i].
        let d1 = &u1 - &one;
        let d2 = &u2 - &one;
        let mut classes: Vec<(Scalar, Scalar)> = Vec::new();
        for g1 in gamma_residues() {
            for g2 in gamma_residues() {
                let z1 = frac(&(&g1 / &d1));
                let z2 = frac(&(&g2 / &d2));
                if !is_gauss_integer(&(&g1 * &z2)) {
                    continue;
                }
                if !classes.contains(&(z1.clone(), z2.clone())) {
                    classes.push((z1, z2));
                }
            }
        }
        classes.sort_by_key(|(a, b)| {
            (a.re.clone(), a.im.clone(), b.re.clone(), b.im.clone())
        });
        return FixedLocus::Curves(classes);
    }

    // isolated case: z₁ = γ₁/(u₁−1), z₂ = γ₂/(u₂−1),
    // z₃ = (γ₁ z₂ + γ₃)/(u₃ − 1)
    let d1 = &u1 - &one;
    let d2 = &u2 - &one;
    let d3 = &u3 - &one;
    let mut candidates = Vec::new();
    for g1 in gamma_residues() {
        for g2 in gamma_residues() {
            for g3 in gamma_residues() {
                let z1 = &g1 / &d1;
                let z2 = &g2 / &d2;
                let z3 = &(&(&g1 * &z2) + &g3) / &d3;
                candidates.push([z1, z2, z3]);
            }
        }
    }
    let mut classes = dedup_points(candidates);
    classes.sort_by(|a, b| {
        let key = |p: &Point| {
            (
                p[0].re.clone(),
                p[0].im.clone(),
                p[1].re.clone(),
                p[1].im.clone(),
                p[2].re.clone(),
                p[2].im.clone(),
            )
        };
        key(a).cmp(&key(b))
    });
    FixedLocus::Points(classes)
}

/// Builtin model/complex lookup. Family parameters arrive as
/// (name, value) pairs.
pub enum ModelRef {
    Plain(Model),
    Restricted(Complex),
}

impl ModelRef {
    pub fn into_complex(self) -> Complex {
        match self {
            ModelRef::Plain(m) => Complex::full(m),
            ModelRef::Restricted(c) => c,
        }
    }
}

pub const BUILTIN_NAMES: &[&str] = &[
    "iwasawa",
    "iwasawa_orbifold",
    "nakamura_hp",
    "nakamura_family",
    "solv_family",
    "solv_t2_family",
];

pub fn builtin_model(name: &str, params: &[(String, Scalar)]) -> Result<ModelRef, CatalogError> {
    let get = |key: &str| -> Result<Scalar, CatalogError> {
        params
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| CatalogError::MissingParameter(key.to_string()))
    };
    match name {
        "iwasawa" => Ok(ModelRef::Plain(iwasawa())),
        "iwasawa_orbifold" => Ok(ModelRef::Restricted(iwasawa_orbifold())),
        "nakamura_hp" => Ok(ModelRef::Plain(nakamura_hp())),
        "nakamura_family" => Ok(ModelRef::Plain(nakamura_family(&get("t")?)?)),
        "solv_family" => {
            let t1 = get("t1")?;
            let t2 = get("t2").unwrap_or_else(|_| Scalar::zero());
            Ok(ModelRef::Plain(solv_family(&t1, &t2)?))
        }
        "solv_t2_family" => Ok(ModelRef::Plain(solv_t2_family(&get("t2")?)?)),
        other => Err(CatalogError::UnknownModel(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formexpr::parse_form;

    fn p3(text: &str) -> Form {
        parse_form(text, 3).unwrap()
    }

    #[test]
    fn builtins_validate() {
        for m in [
            iwasawa(),
            nakamura_hp(),
            nakamura_family(&Scalar::from_ratio(1, 2)).unwrap(),
            nakamura_family(&Scalar::from_gauss(0, 1, 1, 3)).unwrap(),
            solv_family(&Scalar::one(), &Scalar::zero()).unwrap(),
            solv_family(&Scalar::one(), &Scalar::from_ratio(1, 2)).unwrap(),
            solv_t2_family(&Scalar::from_ratio(1, 2)).unwrap(),
        ] {
            let report = m.validate();
            assert!(report.is_ok(), "{}: {:?}", m.name, report.failures);
        }
    }

    #[test]
    fn family_degenerates_to_base_at_zero() {
        let fam = nakamura_family(&Scalar::zero()).unwrap();
        let base = nakamura_hp();
        assert_eq!(fam.d_eta, base.d_eta);
        assert_eq!(fam.mu, base.mu);
    }

    #[test]
    fn family_rejects_large_parameter() {
        assert!(matches!(
            nakamura_family(&Scalar::from_int(2)),
            Err(CatalogError::InadmissibleParameter(_))
        ));
    }

    #[test]
    fn nakamura_family_coefficients_at_half() {
        let fam = nakamura_family(&Scalar::from_ratio(1, 2)).unwrap();
        // λ = 4/3, λt = 2/3
        let expect_d2 = p3("-e1^e2")
            .scale(&Scalar::from_ratio(4, 3))
            .add(&p3("e2^E1").scale(&Scalar::from_ratio(-2, 3)));
        assert_eq!(fam.d_eta[1], expect_d2);
        let expect_mu = p3("e1")
            .scale(&Scalar::from_ratio(4, 3))
            .add(&p3("E1").scale(&Scalar::from_ratio(-2, 3)));
        assert_eq!(fam.mu, expect_mu);
    }

    #[test]
    fn derive_matches_hardcoded_families() {
        // Nakamura: η_t¹ = η¹ + t η̄¹ over the base model
        for t in [Scalar::from_ratio(1, 2), Scalar::from_gauss(0, 1, 1, 3)] {
            let base = nakamura_hp();
            let coframe = vec![
                p3("e1").add(&p3("E1").scale(&t)),
                p3("e2"),
                p3("e3"),
            ];
            let derived = derive_deformed_structure(&base, &coframe).unwrap();
            let hard = nakamura_family(&t).unwrap();
            assert_eq!(derived.d_eta, hard.d_eta, "t = {t}");
            assert_eq!(derived.mu, hard.mu, "t = {t}");
        }
        // solv: η_t¹ = η¹ + t₁ η̄³, η_t³ = η³ + t₂ η̄³
        for (t1, t2) in [
            (Scalar::one(), Scalar::from_ratio(1, 2)),
            (Scalar::one(), Scalar::from_gauss(0, 1, 1, 3)),
            (Scalar::one(), Scalar::zero()),
        ] {
            let base = solv_family(&Scalar::zero(), &Scalar::zero()).unwrap();
            let coframe = vec![
                p3("e1").add(&p3("E3").scale(&t1)),
                p3("e2"),
                p3("e3").add(&p3("E3").scale(&t2)),
            ];
            let derived = derive_deformed_structure(&base, &coframe).unwrap();
            let hard = solv_family(&t1, &t2).unwrap();
            assert_eq!(derived.d_eta, hard.d_eta, "t = ({t1},{t2})");
        }
    }

    #[test]
    fn derive_identity_coframe_is_noop() {
        let base = nakamura_hp();
        let coframe = vec![p3("e1"), p3("e2"), p3("e3")];
        let derived = derive_deformed_structure(&base, &coframe).unwrap();
        assert_eq!(derived.d_eta, base.d_eta);
        assert_eq!(derived.mu, base.mu);
    }

    #[test]
    fn derive_inverse_coframe_round_trips() {
        let t = Scalar::from_ratio(1, 2);
        let base = nakamura_hp();
        let fam = nakamura_family(&t).unwrap();
        // inverse change: η¹ = λ η_t¹ − λt η̄_t¹ expressed over the family model
        let lam = Scalar::from_ratio(4, 3);
        let back = vec![
            p3("e1").scale(&lam).add(&p3("E1").scale(&(-&(&lam * &t)))),
            p3("e2"),
            p3("e3"),
        ];
        let restored = derive_deformed_structure(&fam, &back).unwrap();
        assert_eq!(restored.d_eta, base.d_eta);
        assert_eq!(restored.mu, base.mu);
    }

    #[test]
    fn change_coframe_reproduces_tau_presentation() {
        // From the (t₁⁰, t₂) presentation with τ¹ = 2i η³,
        // τ² = η¹ − (t₁⁰/t₂) η³, τ³ = η².
        let t2 = Scalar::from_ratio(1, 2);
        let base = solv_family(&Scalar::one(), &t2).unwrap();
        let ratio = &Scalar::one() / &t2;
        let tau = vec![
            p3("e3").scale(&Scalar::from_gauss(0, 1, 2, 1)),
            p3("e1").add(&p3("e3").scale(&-&ratio)),
            p3("e2"),
        ];
        let derived = change_coframe(&base, &tau).unwrap();
        let hard = solv_t2_family(&t2).unwrap();
        assert_eq!(derived.d_eta, hard.d_eta);
        // permutation coframe permutes structure constants
        let perm = vec![p3("e1"), p3("e3"), p3("e2")];
        let base2 = nakamura_hp();
        let permuted = change_coframe(&base2, &perm).unwrap();
        assert_eq!(permuted.d_eta[1], p3("e1^e2"));
        assert_eq!(permuted.d_eta[2], p3("-e1^e3"));
    }

    #[test]
    fn singular_coframe_rejected() {
        let base = nakamura_hp();
        let coframe = vec![p3("e1"), p3("e1"), p3("e3")];
        assert!(matches!(
            derive_deformed_structure(&base, &coframe),
            Err(CatalogError::SingularCoframe)
        ));
    }

    #[test]
    fn sigma_invariants_count_sixteen() {
        let cx = iwasawa_orbifold();
        let mut total = 0;
        let mut dims = std::collections::BTreeMap::new();
        for p in 0..=3u8 {
            for q in 0..=3u8 {
                let k = cx.basis(p, q, Sector::TRIVIAL).len();
                total += k;
                dims.insert((p, q), k);
            }
        }
        assert_eq!(total, 16);
        assert_eq!(dims[&(1, 1)], 5); // φ^{11̄}, φ^{12̄}, φ^{21̄}, φ^{22̄}, φ^{33̄}
        assert_eq!(dims[&(3, 0)], 1);
        assert_eq!(dims[&(2, 1)], 1); // φ^{12 3̄}
        // φ³∧φ̄³ is σ-invariant even though it is often omitted from listings
        let m33 = Monomial::new(Sector::TRIVIAL, 0b100, 0b100);
        assert!(cx.keeps(&m33));
    }

    #[test]
    fn invariant_wedge_stays_invariant() {
        let cx = iwasawa_orbifold();
        let mut monos = Vec::new();
        for p in 0..=3u8 {
            for q in 0..=3u8 {
                monos.extend(cx.basis(p, q, Sector::TRIVIAL));
            }
        }
        for a in &monos {
            for b in &monos {
                let w = Form::from_monomial(*a, Scalar::one())
                    .wedge(&Form::from_monomial(*b, Scalar::one()));
                for (m, _) in w.terms() {
                    assert!(cx.keeps(m), "{a:?} ∧ {b:?} leaves the subcomplex");
                }
            }
        }
    }

    #[test]
    fn burnside_count_matches_invariants() {
        let model = iwasawa();
        let action = &model.actions["sigma"];
        let mut fixed = 0usize;
        let mut trace_sum = Scalar::zero();
        for p in 0..=3u8 {
            for q in 0..=3u8 {
                for m in basis_monomials(3, p, q, Sector::TRIVIAL) {
                    if action.eigenvalue_on(&m).is_one() {
                        fixed += 1;
                    }
                    let mut power = Scalar::one();
                    for _ in 0..action.order {
                        trace_sum += &power;
                        power = &power * &action.eigenvalue_on(&m);
                    }
                }
            }
        }
        // Σ_j tr(action^j) = order · #invariants
        assert_eq!(trace_sum, Scalar::from_int(4 * fixed as i64));
    }

    #[test]
    fn trivial_action_keeps_everything() {
        let model = iwasawa().with_action(GroupAction::new(
            "triv",
            1,
            vec![Scalar::one(), Scalar::one(), Scalar::one()],
        ));
        let cx = invariant_subcomplex(&model, "triv").unwrap();
        let mut total = 0;
        for p in 0..=3u8 {
            for q in 0..=3u8 {
                total += cx.basis(p, q, Sector::TRIVIAL).len();
            }
        }
        assert_eq!(total, 64);
    }

    #[test]
    fn sigma_has_sixteen_fixed_points() {
        let FixedLocus::Points(pts) = fixed_locus(&PointAction::sigma()) else {
            panic!("sigma has isolated fixed points");
        };
        assert_eq!(pts.len(), 16);
        // the four classes over (z₁, z₂) = (0, 0), normalized to [0,1)²
        let zero = Scalar::zero();
        let half = Scalar::from_ratio(1, 2);
        let half_i = Scalar::from_gauss(0, 1, 1, 2);
        let both = &half + &half_i;
        let mut z3s: Vec<Scalar> = pts
            .iter()
            .filter(|p| p[0].is_zero() && p[1].is_zero())
            .map(|p| p[2].clone())
            .collect();
        z3s.sort_by_key(|s| (s.re.clone(), s.im.clone()));
        let mut expect = vec![zero, half, half_i, both];
        expect.sort_by_key(|s| (s.re.clone(), s.im.clone()));
        assert_eq!(z3s, expect);
    }

    #[test]
    fn psi_has_eight_fixed_curves() {
        let FixedLocus::Curves(bases) = fixed_locus(&PointAction::psi()) else {
            panic!("psi fixes curves");
        };
        assert_eq!(bases.len(), 8);
        let half = Scalar::from_ratio(1, 2);
        let both = &half + &Scalar::from_gauss(0, 1, 1, 2);
        assert!(bases.contains(&(Scalar::zero(), Scalar::zero())));
        assert!(bases.contains(&(both.clone(), both.clone())));
        assert!(bases.contains(&(Scalar::zero(), half.clone())));
        assert!(!bases.contains(&(half.clone(), half_point())));
    }

    fn half_point() -> Scalar {
        Scalar::from_gauss(0, 1, 1, 2)
    }

    #[test]
    fn identity_action_is_not_isolated() {
        assert!(matches!(
            fixed_locus(&PointAction::identity()),
            FixedLocus::NotIsolated
        ));
    }

    #[test]
    fn fixed_points_order_independent() {
        // enumeration is followed by canonical sorting, so two runs agree
        let a = fixed_locus(&PointAction::sigma());
        let b = fixed_locus(&PointAction::sigma());
        let (FixedLocus::Points(pa), FixedLocus::Points(pb)) = (a, b) else {
            panic!()
        };
        assert_eq!(pa.len(), pb.len());
        for (x, y) in pa.iter().zip(&pb) {
            assert_eq!(x, y);
        }
    }
}
