//! Differentials, bidegree projections, the antilinear Hodge star for
//! diagonal metrics, codifferentials, and harmonicity tests on a [`Model`].
//!
//! A model is a rank-n coframe with constant structure equations `dη^i`, a
//! character potential μ (the differential of the distinguished coordinate,
//! expressed in the coframe), a finite set of unitary character sectors, and
//! a diagonal metric. The twisted differential on a sector-(a,b) form is
//! `d(χ·α) = χ·((a·μ + b·μ̄)∧α + dα)`.

use crate::catalog::GroupAction;
use crate::exterior::{Bidegree, Form, Monomial, Sector};
use crate::scalar::Scalar;
use num_rational::BigRational;
use num_traits::Signed;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CalculusError {
    #[error("operator requires a pure-bidegree form, got a mixed form")]
    MixedBidegree,
    #[error("form uses generator index beyond the coframe rank {0}")]
    RankExceeded(u8),
}

/// Which Laplacian kernel a harmonicity test refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HarmonicFlavor {
    DeRham,
    Dolbeault,
    BottChern,
    Aeppli,
}

impl HarmonicFlavor {
    pub fn name(self) -> &'static str {
        match self {
            HarmonicFlavor::DeRham => "deRham",
            HarmonicFlavor::Dolbeault => "dolbeault",
            HarmonicFlavor::BottChern => "bottChern",
            HarmonicFlavor::Aeppli => "aeppli",
        }
    }
}

/// An invariant-form model of a compact quotient.
#[derive(Clone, Debug)]
pub struct Model {
    pub name: String,
    /// Complex rank n of the coframe.
    pub rank: u8,
    /// `d_eta[i]` is the value of `dη^{i+1}`: a constant-coefficient degree-2
    /// form, possibly mixing (2,0) and (1,1) parts.
    pub d_eta: Vec<Form>,
    /// Character potential: d of the distinguished coordinate in the coframe.
    /// Zero when only the trivial sector is configured.
    pub mu: Form,
    /// Configured character sectors, sorted and deduplicated.
    pub sectors: Vec<Sector>,
    /// Diagonal metric coefficients `⟨η^k, η^k⟩ = c_k > 0`.
    pub metric: Vec<BigRational>,
    /// Named finite diagonal group actions.
    pub actions: BTreeMap<String, GroupAction>,
}

impl Model {
    pub fn new(name: &str, rank: u8, d_eta: Vec<Form>, mu: Form, sectors: Vec<Sector>) -> Model {
        let mut sectors = sectors;
        sectors.sort();
        sectors.dedup();
        Model {
            name: name.to_string(),
            rank,
            d_eta,
            mu,
            sectors,
            metric: vec![BigRational::from_integer(1.into()); rank as usize],
            actions: BTreeMap::new(),
        }
    }

    pub fn with_metric(mut self, metric: Vec<BigRational>) -> Model {
        self.metric = metric;
        self
    }

    pub fn with_action(mut self, action: GroupAction) -> Model {
        self.actions.insert(action.name.clone(), action);
        self
    }

    fn d_holo_gen(&self, i: usize) -> &Form {
        &self.d_eta[i]
    }

    fn d_anti_gen(&self, i: usize) -> Form {
        self.d_eta[i].conjugate()
    }

    /// Exterior differential, defined on arbitrary (mixed, multi-sector) forms.
    pub fn d(&self, x: &Form) -> Form {
        let mut out = Form::zero();
        for (m, c) in x.terms() {
            out = out.add(&self.d_monomial(m).scale(c));
        }
        out
    }

    fn d_monomial(&self, m: &Monomial) -> Form {
        let mut out = Form::zero();
        let s = m.sector;
        // character term
        if !s.is_trivial() {
            let a = Scalar::new(
                BigRational::from_integer(s.a.re.into()),
                BigRational::from_integer(s.a.im.into()),
            );
            let b = Scalar::new(
                BigRational::from_integer(s.b.re.into()),
                BigRational::from_integer(s.b.im.into()),
            );
            let omega = self.mu.scale(&a).add(&self.mu.conjugate().scale(&b));
            let twist = Form::from_monomial(Monomial::new(s, 0, 0), Scalar::one());
            let body = Form::from_monomial(Monomial::new(Sector::TRIVIAL, m.holo, m.anti), Scalar::one());
            out = out.add(&twist.wedge(&omega).wedge(&body));
        }
        // derivation over the generator factors in canonical order
        let mut gens: Vec<(bool, usize)> = Vec::new();
        for i in 0..self.rank as usize {
            if m.holo >> i & 1 == 1 {
                gens.push((true, i));
            }
        }
        for i in 0..self.rank as usize {
            if m.anti >> i & 1 == 1 {
                gens.push((false, i));
            }
        }
        for (k, &(is_holo, i)) in gens.iter().enumerate() {
            let mut before_h = 0u16;
            let mut before_a = 0u16;
            for &(h2, j) in &gens[..k] {
                if h2 {
                    before_h |= 1 << j;
                } else {
                    before_a |= 1 << j;
                }
            }
            let mut after_h = 0u16;
            let mut after_a = 0u16;
            for &(h2, j) in &gens[k + 1..] {
                if h2 {
                    after_h |= 1 << j;
                } else {
                    after_a |= 1 << j;
                }
            }
            let sign = if k % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            let before = Form::from_monomial(Monomial::new(s, before_h, before_a), sign);
            let after = Form::from_monomial(Monomial::new(Sector::TRIVIAL, after_h, after_a), Scalar::one());
            let dg = if is_holo {
                self.d_holo_gen(i).clone()
            } else {
                self.d_anti_gen(i)
            };
            out = out.add(&before.wedge(&dg).wedge(&after));
        }
        out
    }

    fn pure_bidegree(&self, x: &Form) -> Result<Option<(u8, u8)>, CalculusError> {
        if x.max_index() > self.rank {
            return Err(CalculusError::RankExceeded(self.rank));
        }
        match x.bidegree() {
            Bidegree::Zero => Ok(None),
            Bidegree::Pure(p, q) => Ok(Some((p, q))),
            Bidegree::Mixed => Err(CalculusError::MixedBidegree),
        }
    }

    /// (p+1,q)-component of `d` on a pure (p,q)-form.
    pub fn del(&self, x: &Form) -> Result<Form, CalculusError> {
        match self.pure_bidegree(x)? {
            None => Ok(Form::zero()),
            Some((p, q)) => Ok(self.d(x).project_bidegree(p + 1, q)),
        }
    }

    /// (p,q+1)-component of `d` on a pure (p,q)-form.
    pub fn delbar(&self, x: &Form) -> Result<Form, CalculusError> {
        match self.pure_bidegree(x)? {
            None => Ok(Form::zero()),
            Some((p, q)) => Ok(self.d(x).project_bidegree(p, q + 1)),
        }
    }

    /// `∂∘∂̄` on a pure (p,q)-form.
    pub fn del_delbar(&self, x: &Form) -> Result<Form, CalculusError> {
        self.del(&self.delbar(x)?)
    }

    /// Weight `∏ c_k` of a monomial under the diagonal metric (sectors are
    /// orthonormal factors).
    pub fn monomial_weight(&self, m: &Monomial) -> BigRational {
        let mut w = BigRational::from_integer(1.into());
        for k in 0..self.rank as usize {
            if m.holo >> k & 1 == 1 {
                w *= &self.metric[k];
            }
            if m.anti >> k & 1 == 1 {
                w *= &self.metric[k];
            }
        }
        w
    }

    /// Hermitian inner product, antilinear in the second argument.
    pub fn inner_product(&self, x: &Form, y: &Form) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in x.terms() {
            let yc = y.coeff(m);
            if !yc.is_zero() {
                let w = Scalar::from_rational(self.monomial_weight(m));
                acc += &(&(c * &yc.conj()) * &w);
            }
        }
        acc
    }

    /// Antilinear Hodge star. The volume form is the top monomial normalized
    /// so `g(vol, vol) = 1` with positive coefficient; the star maps a basis
    /// monomial to its complementary monomial with the scalar determined by
    /// `α ∧ ∗α = g(α, α)·vol` and the sector to its conjugate.
    pub fn hodge_star(&self, x: &Form) -> Result<Form, CalculusError> {
        self.pure_bidegree(x)?;
        let mut out = Form::zero();
        let mut vol_inv = BigRational::from_integer(1.into());
        for c in &self.metric {
            vol_inv /= c;
        }
        for (m, c) in x.terms() {
            let comp = m.complement(self.rank);
            let plain = Monomial::new(Sector::TRIVIAL, m.holo, m.anti);
            let plain_comp = Monomial::new(Sector::TRIVIAL, comp.holo, comp.anti);
            let (_, sign) = crate::exterior::wedge_monomials(&plain, &plain_comp)
                .expect("complement never overlaps");
            let coef = {
                let mut v = self.monomial_weight(m) * &vol_inv;
                if sign < 0 {
                    v = -v;
                }
                Scalar::from_rational(v)
            };
            out.add_term(comp, &c.conj() * &coef);
        }
        Ok(out)
    }

    /// `∂* = −∗∂∗`.
    pub fn codiff_del(&self, x: &Form) -> Result<Form, CalculusError> {
        Ok(self.del(&self.hodge_star(x)?)?
            .pipe(|f| self.hodge_star(&f))?
            .neg())
    }

    /// `∂̄* = −∗∂̄∗`.
    pub fn codiff_delbar(&self, x: &Form) -> Result<Form, CalculusError> {
        Ok(self.delbar(&self.hodge_star(x)?)?
            .pipe(|f| self.hodge_star(&f))?
            .neg())
    }

    /// First-order kernel characterization of harmonicity for each Laplacian.
    /// Returns the name of the first failing condition, if any.
    pub fn harmonic_failure(
        &self,
        x: &Form,
        flavor: HarmonicFlavor,
    ) -> Result<Option<&'static str>, CalculusError> {
        match flavor {
            HarmonicFlavor::DeRham => {
                if x.max_index() > self.rank {
                    return Err(CalculusError::RankExceeded(self.rank));
                }
                let degrees: std::collections::BTreeSet<u8> =
                    x.terms().map(|(m, _)| m.degree()).collect();
                if degrees.len() > 1 {
                    return Err(CalculusError::MixedBidegree);
                }
                if !self.d(x).is_zero() {
                    return Ok(Some("d x != 0"));
                }
                if !self.d(&self.star_total(x)?).is_zero() {
                    return Ok(Some("d *x != 0"));
                }
                Ok(None)
            }
            HarmonicFlavor::Dolbeault => {
                if !self.delbar(x)?.is_zero() {
                    return Ok(Some("delbar x != 0"));
                }
                if !self.delbar(&self.hodge_star(x)?)?.is_zero() {
                    return Ok(Some("delbar *x != 0"));
                }
                Ok(None)
            }
            HarmonicFlavor::BottChern => {
                if !self.del(x)?.is_zero() {
                    return Ok(Some("del x != 0"));
                }
                if !self.delbar(x)?.is_zero() {
                    return Ok(Some("delbar x != 0"));
                }
                if !self.del_delbar(&self.hodge_star(x)?)?.is_zero() {
                    return Ok(Some("del delbar *x != 0"));
                }
                Ok(None)
            }
            HarmonicFlavor::Aeppli => {
                if !self.del(&self.hodge_star(x)?)?.is_zero() {
                    return Ok(Some("del *x != 0"));
                }
                if !self.delbar(&self.hodge_star(x)?)?.is_zero() {
                    return Ok(Some("delbar *x != 0"));
                }
                if !self.del_delbar(x)?.is_zero() {
                    return Ok(Some("del delbar x != 0"));
                }
                Ok(None)
            }
        }
    }

    pub fn is_harmonic(&self, x: &Form, flavor: HarmonicFlavor) -> Result<bool, CalculusError> {
        Ok(self.harmonic_failure(x, flavor)?.is_none())
    }

    /// Star of a pure-total-degree (possibly mixed-bidegree) form, summing
    /// the stars of its bidegree components.
    pub fn star_total(&self, x: &Form) -> Result<Form, CalculusError> {
        let mut out = Form::zero();
        for p in 0..=self.rank {
            for q in 0..=self.rank {
                let part = x.project_bidegree(p, q);
                if !part.is_zero() {
                    out = out.add(&self.hodge_star(&part)?);
                }
            }
        }
        Ok(out)
    }

    /// Validation report: empty `failures` means the model is well-formed.
    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        if self.rank == 0 || self.rank > crate::exterior::MAX_RANK {
            failures.push(format!("rank {} outside supported range 1..=6", self.rank));
        }
        if self.d_eta.len() != self.rank as usize {
            failures.push(format!(
                "expected {} structure equations, found {}",
                self.rank,
                self.d_eta.len()
            ));
        }
        if self.metric.len() != self.rank as usize {
            failures.push(format!(
                "expected {} metric coefficients, found {}",
                self.rank,
                self.metric.len()
            ));
        }
        for (k, c) in self.metric.iter().enumerate() {
            if !c.is_positive() {
                failures.push(format!("metric coefficient c_{} is not positive", k + 1));
            }
        }
        for (i, de) in self.d_eta.iter().enumerate() {
            if de.max_index() > self.rank {
                failures.push(format!("d eta^{} uses out-of-range generators", i + 1));
            }
            if !de.sectors().iter().all(|s| s.is_trivial()) {
                failures.push(format!("d eta^{} must have constant coefficients", i + 1));
            }
            if !de.is_zero() && de.bidegree() == Bidegree::Mixed {
                let bad: Vec<String> = de
                    .terms()
                    .filter(|(m, _)| m.degree() != 2)
                    .map(|(m, _)| format!("{m:?}"))
                    .collect();
                if !bad.is_empty() {
                    failures.push(format!("d eta^{} has non-degree-2 terms", i + 1));
                }
            }
            if !de.project_bidegree(0, 2).is_zero() {
                failures.push(format!(
                    "integrability: d eta^{} has a (0,2) component",
                    i + 1
                ));
            }
            let dd = self.d(de);
            if !dd.is_zero() {
                failures.push(format!("d(d eta^{}) != 0", i + 1));
            }
        }
        let dmu = self.d(&self.mu);
        let dmu_bar = self.d(&self.mu.conjugate());
        for s in &self.sectors {
            if !s.is_unitary() {
                failures.push(format!("sector {s} violates unitarity b = -conj(a)"));
            }
            let a = Scalar::new(
                BigRational::from_integer(s.a.re.into()),
                BigRational::from_integer(s.a.im.into()),
            );
            let b = Scalar::new(
                BigRational::from_integer(s.b.re.into()),
                BigRational::from_integer(s.b.im.into()),
            );
            if !dmu.scale(&a).add(&dmu_bar.scale(&b)).is_zero() {
                failures.push(format!("d squared fails on sector {s}: a*d(mu) + b*d(conj mu) != 0"));
            }
        }
        for action in self.actions.values() {
            for msg in action.check_on(self) {
                failures.push(msg);
            }
        }
        ValidationReport { model: self.name.clone(), failures }
    }
}

/// Helper for readable operator chains.
trait Pipe: Sized {
    fn pipe<T>(self, f: impl FnOnce(Self) -> T) -> T {
        f(self)
    }
}
impl Pipe for Form {}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub model: String,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}
