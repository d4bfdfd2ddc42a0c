//! Sector-twisted exterior algebra over a rank-n complex coframe.
//!
//! A monomial is a character sector `e^{a·w + b·w̄}` together with an
//! ascending product of holomorphic generators `e1..en` and antiholomorphic
//! generators `E1..En`, stored as bitmasks. Forms are finite sums of
//! monomials with [`Scalar`] coefficients in a canonical order, so every
//! computation downstream is deterministic.

use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Maximum supported coframe rank (bitmask width is ample at 16; signs are
/// counted with popcounts, so rank is limited only by sanity).
pub const MAX_RANK: u8 = 6;

/// A Gaussian integer, used for sector exponents.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };

    pub fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    pub fn conj(self) -> Self {
        GaussInt { re: self.re, im: -self.im }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }
}

impl std::ops::Add for GaussInt {
    type Output = GaussInt;
    fn add(self, o: GaussInt) -> GaussInt {
        GaussInt { re: self.re + o.re, im: self.im + o.im }
    }
}

impl std::ops::Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, 1) => write!(f, "i"),
            (0, -1) => write!(f, "-i"),
            (0, im) => write!(f, "{im}i"),
            (re, 1) => write!(f, "{re}+i"),
            (re, -1) => write!(f, "{re}-i"),
            (re, im) if im > 0 => write!(f, "{re}+{im}i"),
            (re, im) => write!(f, "{re}{im}i"),
        }
    }
}

/// The character `χ = e^{a·w + b·w̄}` attached to a monomial.
///
/// Sectors add under wedge and map to `(conj b, conj a)` under conjugation
/// and under the antilinear Hodge star. The canonical order is lexicographic
/// on `(a.re, a.im, b.re, b.im)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sector {
    pub a: GaussInt,
    pub b: GaussInt,
}

impl Sector {
    pub const TRIVIAL: Sector = Sector { a: GaussInt::ZERO, b: GaussInt::ZERO };

    pub fn new(a: GaussInt, b: GaussInt) -> Self {
        Sector { a, b }
    }

    pub fn is_trivial(self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Unitarity `b = −conj(a)`, satisfied by every character with unit
    /// modulus on the quotient.
    pub fn is_unitary(self) -> bool {
        self.b == -self.a.conj()
    }

    pub fn add(self, o: Sector) -> Sector {
        Sector { a: self.a + o.a, b: self.b + o.b }
    }

    pub fn conj(self) -> Sector {
        Sector { a: self.b.conj(), b: self.a.conj() }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x({},{})", self.a, self.b)
    }
}

/// A basis monomial `χ · η^I ∧ η̄^J`.
///
/// `holo` bit `k` set means generator `e(k+1)` is present; likewise `anti`
/// for `E(k+1)`. The derived `Ord` gives the canonical order: sector
/// lexicographic, then holo mask ascending, then anti mask ascending.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub sector: Sector,
    pub holo: u16,
    pub anti: u16,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial { sector: Sector::TRIVIAL, holo: 0, anti: 0 }
    }

    pub fn new(sector: Sector, holo: u16, anti: u16) -> Self {
        Monomial { sector, holo, anti }
    }

    pub fn bidegree(&self) -> (u8, u8) {
        (self.holo.count_ones() as u8, self.anti.count_ones() as u8)
    }

    pub fn degree(&self) -> u8 {
        let (p, q) = self.bidegree();
        p + q
    }

    /// Complementary index sets inside rank `n`, used by the Hodge star.
    pub fn complement(&self, n: u8) -> Monomial {
        let full = (1u16 << n) - 1;
        Monomial {
            sector: self.sector.conj(),
            holo: full & !self.holo,
            anti: full & !self.anti,
        }
    }
}

/// Sign of merging two ascending generator blocks into one ascending block:
/// `(−1)^inversions` where an inversion is a pair `x ∈ xs, y ∈ ys, x > y`.
fn merge_sign(xs: u16, ys: u16) -> i32 {
    let mut inversions = 0u32;
    let mut y = ys;
    while y != 0 {
        let bit = y & y.wrapping_neg();
        // generators of xs strictly above this y-generator
        let above = xs & !((bit << 1).wrapping_sub(1));
        inversions += above.count_ones();
        y &= y - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Wedge of two monomials: `None` on a repeated generator, otherwise the
/// merged monomial and the Koszul sign from interleaving all generator
/// factors (η's and η̄'s counted together).
pub fn wedge_monomials(x: &Monomial, y: &Monomial) -> Option<(Monomial, i32)> {
    if x.holo & y.holo != 0 || x.anti & y.anti != 0 {
        return None;
    }
    let mut sign = merge_sign(x.holo, y.holo) * merge_sign(x.anti, y.anti);
    // moving y's holo block left past x's anti block
    if (x.anti.count_ones() * y.holo.count_ones()) % 2 == 1 {
        sign = -sign;
    }
    let m = Monomial {
        sector: x.sector.add(y.sector),
        holo: x.holo | y.holo,
        anti: x.anti | y.anti,
    };
    Some((m, sign))
}

/// Bidegree classification of a form.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Bidegree {
    /// The zero form; vacuously of every pure bidegree.
    Zero,
    Pure(u8, u8),
    Mixed,
}

/// A finite sum of monomials with nonzero [`Scalar`] coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Form {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Form {
    pub fn zero() -> Self {
        Form::default()
    }

    /// The constant 1 (empty monomial in the trivial sector).
    pub fn one() -> Self {
        Form::from_monomial(Monomial::unit(), Scalar::one())
    }

    pub fn from_monomial(m: Monomial, c: Scalar) -> Self {
        let mut f = Form::zero();
        f.add_term(m, c);
        f
    }

    /// Single coframe generator `e(i)` (1-based index).
    pub fn holo_gen(i: u8) -> Self {
        Form::from_monomial(
            Monomial::new(Sector::TRIVIAL, 1 << (i - 1), 0),
            Scalar::one(),
        )
    }

    /// Single coframe generator `E(i)` (1-based index).
    pub fn anti_gen(i: u8) -> Self {
        Form::from_monomial(
            Monomial::new(Sector::TRIVIAL, 0, 1 << (i - 1)),
            Scalar::one(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// First term in canonical monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = &*e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn neg(&self) -> Form {
        Form {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero();
        }
        Form {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                if let Some((m, sign)) = wedge_monomials(m1, m2) {
                    let c = c1 * c2;
                    out.add_term(m, if sign < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// Complex conjugation: swaps holo/anti blocks with the reordering sign,
    /// conjugates coefficients and sectors. An involution.
    pub fn conjugate(&self) -> Form {
        let mut out = Form::zero();
        for (m, c) in self.terms() {
            let sign = (m.holo.count_ones() * m.anti.count_ones()) % 2;
            let mm = Monomial::new(m.sector.conj(), m.anti, m.holo);
            let cc = c.conj();
            out.add_term(mm, if sign == 1 { -cc } else { cc });
        }
        out
    }

    pub fn bidegree(&self) -> Bidegree {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Bidegree::Zero;
        };
        let (p, q) = first.bidegree();
        if it.all(|m| m.bidegree() == (p, q)) {
            Bidegree::Pure(p, q)
        } else {
            Bidegree::Mixed
        }
    }

    /// True when every term has bidegree `(p, q)`; vacuously true for zero.
    pub fn is_pure(&self, p: u8, q: u8) -> bool {
        matches!(self.bidegree(), Bidegree::Zero) || self.bidegree() == Bidegree::Pure(p, q)
    }

    pub fn project_bidegree(&self, p: u8, q: u8) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.bidegree() == (p, q))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn project_total_degree(&self, k: u8) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn project_sector(&self, s: Sector) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.sector == s)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// The set of sectors appearing in this form, in canonical order.
    pub fn sectors(&self) -> Vec<Sector> {
        let mut out: Vec<Sector> = self.terms.keys().map(|m| m.sector).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Largest generator index used (1-based), 0 for constants.
    pub fn max_index(&self) -> u8 {
        self.terms
            .keys()
            .map(|m| {
                let bits = m.holo | m.anti;
                (16 - bits.leading_zeros()) as u8
            })
            .max()
            .unwrap_or(0)
    }

    /// `other = λ·self` for some nonzero scalar λ?
    pub fn proportional_to(&self, other: &Form) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let (m, c) = self.leading().unwrap();
        let (m2, c2) = other.leading().unwrap();
        if m != m2 {
            return false;
        }
        let lambda = c2 / c;
        self.scale(&lambda) == *other
    }
}

/// All `C(n,p)·C(n,q)` monomials of bidegree `(p,q)` in sector `s`, in
/// canonical order.
pub fn basis_monomials(n: u8, p: u8, q: u8, s: Sector) -> Vec<Monomial> {
    if p > n || q > n {
        return Vec::new();
    }
    let holos = masks_with_popcount(n, p);
    let antis = masks_with_popcount(n, q);
    let mut out = Vec::with_capacity(holos.len() * antis.len());
    for &h in &holos {
        for &a in &antis {
            out.push(Monomial::new(s, h, a));
        }
    }
    out
}

fn masks_with_popcount(n: u8, k: u8) -> Vec<u16> {
    (0..(1u16 << n))
        .filter(|m| m.count_ones() as u8 == k)
        .collect()
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::formexpr::format_form(self))
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::formexpr::format_form(self))
    }
}
