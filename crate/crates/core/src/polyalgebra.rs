//! Standard-graded polynomial rings, homogeneous ideals, and degreewise
//! coordinates on quotient rings.
//!
//! There are no Gröbner bases here. The degree-`n` piece of an ideal is the
//! span of `g · μ` over generators `g` and monomials `μ` of complementary
//! degree, row-reduced; quotient coordinates are the non-pivot monomials.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::linalg::{rref, EchelonBasis, FieldSpec, PrimeFieldMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("zero generator in ideal")]
    ZeroGenerator,
    #[error("polynomial has {got} variables, ring has {expected}")]
    VariableCount { expected: usize, got: usize },
    #[error("field mismatch: F_{0} vs F_{1}")]
    FieldMismatch(u32, u32),
}

/// Exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u16>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

/// Term order used to fix bases of graded pieces. Both orders refine total degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    GrLex,
    GRevLex,
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        a.degree().cmp(&b.degree()).then_with(|| match self {
            MonomialOrder::GrLex => a.0.cmp(&b.0),
            // Larger when the last differing exponent is smaller.
            MonomialOrder::GRevLex => {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::GrLex => "grlex",
            MonomialOrder::GRevLex => "grevlex",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "grlex" => Some(MonomialOrder::GrLex),
            "grevlex" => Some(MonomialOrder::GRevLex),
            _ => None,
        }
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `k[x_1, …, x_v]`, every variable of degree 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    variables: Vec<String>,
    field: FieldSpec,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new<S: Into<String>>(
        variables: impl IntoIterator<Item = S>,
        field: FieldSpec,
    ) -> Result<Self, AlgebraError> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        for (i, v) in variables.iter().enumerate() {
            if !is_identifier(v) {
                return Err(AlgebraError::InvalidVariable(v.clone()));
            }
            if variables[..i].contains(v) {
                return Err(AlgebraError::DuplicateVariable(v.clone()));
            }
        }
        Ok(PolyRing {
            variables,
            field,
            order: MonomialOrder::default(),
        })
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::monomial(self.field, Monomial::var(self.nvars(), i), 1)
    }

    pub fn one(&self) -> Poly {
        Poly::monomial(self.field, Monomial::one(self.nvars()), 1)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.field, self.nvars())
    }

    /// Renders in the input syntax accepted by the polynomial parser, terms
    /// in decreasing monomial order.
    pub fn render(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Monomial, u32)> = p.terms().collect();
        terms.sort_by(|a, b| self.order.compare(b.0, a.0));
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let c = self.field.symmetric(c);
            let (neg, abs) = (c < 0, c.unsigned_abs());
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.variables[i].clone()
                    } else {
                        format!("{}^{}", self.variables[i], e)
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if abs != 1 {
                    out.push_str(&format!("{abs}*"));
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

/// All monomials of degree `n`, largest first in the ring's order.
///
/// For `GrLex` this is lexicographically decreasing: `x³, x²y, xy², y³`.
pub fn monomial_basis(ring: &PolyRing, n: usize) -> Vec<Monomial> {
    fn rec(v: usize, i: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == v {
            cur[i] = left as u16;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(v, i + 1, left - e, cur, out);
        }
    }
    let v = ring.nvars();
    let mut out = Vec::new();
    if v == 0 {
        if n == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(v, 0, n, &mut vec![0; v], &mut out);
    if ring.order != MonomialOrder::GrLex {
        out.sort_by(|a, b| ring.order.compare(b, a));
    }
    out
}

/// `C(v + n − 1, n)`, the number of monomials of degree `n` in `v` variables.
pub fn monomial_count(v: usize, n: usize) -> u128 {
    if v == 0 {
        return u128::from(n == 0);
    }
    binomial(v + n - 1, n)
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl Poly {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Poly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(field: FieldSpec, m: Monomial, c: u32) -> Self {
        let mut p = Self::zero(field, m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, m: Monomial, c: u32) {
        debug_assert_eq!(m.nvars(), self.nvars);
        let c = c % self.field.characteristic();
        if c == 0 {
            return;
        }
        let f = self.field;
        let entry = self.terms.entry(m.clone()).or_insert(0);
        *entry = f.add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of a homogeneous polynomial; `None` for zero or inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: u32) -> Poly {
        let mut out = Poly::zero(self.field, self.nvars);
        for (m, &a) in &self.terms {
            out.add_term(m.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(self.field.characteristic() - 1)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.field, self.nvars);
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                out.add_term(m1.mul(m2), self.field.mul(c1, c2));
            }
        }
        out
    }
}

/// Homogeneous ideal given by nonzero homogeneous generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedIdeal {
    generators: Vec<Poly>,
    degrees: Vec<usize>,
}

impl GradedIdeal {
    pub fn new(ring: &PolyRing, generators: Vec<Poly>) -> Result<Self, AlgebraError> {
        let mut degrees = Vec::with_capacity(generators.len());
        for g in &generators {
            if g.nvars() != ring.nvars() {
                return Err(AlgebraError::VariableCount {
                    expected: ring.nvars(),
                    got: g.nvars(),
                });
            }
            if g.field() != ring.field() {
                return Err(AlgebraError::FieldMismatch(
                    g.field().characteristic(),
                    ring.field().characteristic(),
                ));
            }
            if g.is_zero() {
                return Err(AlgebraError::ZeroGenerator);
            }
            degrees.push(g.homogeneous_degree().ok_or(AlgebraError::NotHomogeneous)?);
        }
        Ok(GradedIdeal {
            generators,
            degrees,
        })
    }

    pub fn zero() -> Self {
        GradedIdeal {
            generators: Vec::new(),
            degrees: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

fn index_of(monomials: &[Monomial]) -> HashMap<Monomial, usize> {
    monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect()
}

/// Basis of `I_n` as independent rows in the coordinates of
/// [`monomial_basis`]`(ring, n)`, in reduced row-echelon form.
pub fn ideal_piece(ideal: &GradedIdeal, ring: &PolyRing, n: usize) -> PrimeFieldMatrix {
    let monomials = monomial_basis(ring, n);
    let index = index_of(&monomials);
    ideal_piece_in(ideal, ring, n, &monomials, &index)
}

fn ideal_piece_in(
    ideal: &GradedIdeal,
    ring: &PolyRing,
    n: usize,
    monomials: &[Monomial],
    index: &HashMap<Monomial, usize>,
) -> PrimeFieldMatrix {
    let field = ring.field();
    let mut span = EchelonBasis::new(field, monomials.len());
    for (g, &dg) in ideal.generators.iter().zip(&ideal.degrees) {
        if dg > n {
            continue;
        }
        for mu in monomial_basis(ring, n - dg) {
            let mut row = vec![0u32; monomials.len()];
            for (m, c) in g.terms() {
                row[index[&m.mul(&mu)]] = c;
            }
            span.insert(&row);
        }
    }
    let r = rref(&span.to_matrix());
    let mut out = PrimeFieldMatrix::zeros(field, 0, monomials.len());
    for i in 0..r.rank {
        out.push_row(r.reduced.row(i));
    }
    out
}

/// Degree-`n` piece of a quotient ring, with normal forms of every
/// degree-`n` monomial in the quotient basis.
#[derive(Debug, Clone)]
pub struct QuotientPiece {
    degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Positions (in `monomials`) of the basis monomials of `R_n`.
    basis: Vec<usize>,
    /// `normal_forms[j]` = coordinates of monomial `j` in the basis of `R_n`.
    normal_forms: Vec<Vec<(usize, u32)>>,
    field: FieldSpec,
}

impl QuotientPiece {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn ideal_dim(&self) -> usize {
        self.monomials.len() - self.basis.len()
    }

    pub fn basis_monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.basis.iter().map(|&j| &self.monomials[j])
    }

    pub fn basis_monomial(&self, k: usize) -> &Monomial {
        &self.monomials[self.basis[k]]
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Coordinates of `m` (a degree-`n` monomial) in the basis of `R_n`.
    pub fn normal_form(&self, m: &Monomial) -> &[(usize, u32)] {
        &self.normal_forms[self.index[m]]
    }

    /// The projection `A_n → R_n` as a `dim R_n × dim A_n` matrix.
    pub fn projection(&self) -> PrimeFieldMatrix {
        let mut m = PrimeFieldMatrix::zeros(self.field, self.dim(), self.ambient_dim());
        for (j, nf) in self.normal_forms.iter().enumerate() {
            for &(k, c) in nf {
                m.set(k, j, c);
            }
        }
        m
    }

    /// The inclusion `R_n → A_n` of basis monomials, `dim A_n × dim R_n`.
    pub fn inclusion(&self) -> PrimeFieldMatrix {
        let mut m = PrimeFieldMatrix::zeros(self.field, self.ambient_dim(), self.dim());
        for (k, &j) in self.basis.iter().enumerate() {
            m.set(j, k, 1);
        }
        m
    }
}

#[derive(Debug)]
struct QuotientInner {
    ring: PolyRing,
    ideal: GradedIdeal,
    cache: RwLock<HashMap<usize, Arc<QuotientPiece>>>,
}

/// `R = A / I`. Cheap to clone; graded pieces are computed lazily and
/// memoized. Racing cache fills compute identical values.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    inner: Arc<QuotientInner>,
}

impl QuotientRing {
    pub fn new(ring: PolyRing, ideal: GradedIdeal) -> Self {
        QuotientRing {
            inner: Arc::new(QuotientInner {
                ring,
                ideal,
                cache: RwLock::new(HashMap::new()),
            }),
        }
    }

    /// The polynomial ring itself, as a quotient by the zero ideal.
    pub fn ambient(ring: PolyRing) -> Self {
        Self::new(ring, GradedIdeal::zero())
    }

    pub fn ring(&self) -> &PolyRing {
        &self.inner.ring
    }

    pub fn ideal(&self) -> &GradedIdeal {
        &self.inner.ideal
    }

    pub fn field(&self) -> FieldSpec {
        self.inner.ring.field()
    }

    pub fn piece(&self, n: usize) -> Arc<QuotientPiece> {
        if let Some(p) = self.inner.cache.read().expect("cache poisoned").get(&n) {
            return Arc::clone(p);
        }
        let piece = Arc::new(self.compute_piece(n));
        let mut cache = self.inner.cache.write().expect("cache poisoned");
        Arc::clone(cache.entry(n).or_insert(piece))
    }

    fn compute_piece(&self, n: usize) -> QuotientPiece {
        let ring = &self.inner.ring;
        let field = ring.field();
        let monomials = monomial_basis(ring, n);
        let index = index_of(&monomials);
        let reduced = ideal_piece_in(&self.inner.ideal, ring, n, &monomials, &index);
        let len = monomials.len();

        let mut pivot_of_col = vec![None; len];
        for r in 0..reduced.rows() {
            let pc = reduced.row(r).iter().position(|&x| x != 0).expect("rref row is nonzero");
            pivot_of_col[pc] = Some(r);
        }
        let basis: Vec<usize> = (0..len).filter(|&j| pivot_of_col[j].is_none()).collect();
        let mut basis_pos = vec![usize::MAX; len];
        for (k, &j) in basis.iter().enumerate() {
            basis_pos[j] = k;
        }
        // A pivot monomial m_p satisfies m_p + Σ c_f m_f ∈ I with m_f non-pivot,
        // so m_p ≡ −Σ c_f m_f in R.
        let normal_forms = (0..len)
            .map(|j| match pivot_of_col[j] {
                None => vec![(basis_pos[j], 1)],
                Some(r) => basis
                    .iter()
                    .enumerate()
                    .filter_map(|(k, &f)| {
                        let c = reduced.get(r, f);
                        (c != 0).then(|| (k, field.neg(c)))
                    })
                    .collect(),
            })
            .collect();
        QuotientPiece {
            degree: n,
            monomials,
            index,
            basis,
            normal_forms,
            field,
        }
    }

    /// `(dim R_n, basis monomials, projection A_n → R_n)`.
    pub fn quotient_piece(&self, n: usize) -> (usize, Vec<Monomial>, PrimeFieldMatrix) {
        let piece = self.piece(n);
        (
            piece.dim(),
            piece.basis_monomials().cloned().collect(),
            piece.projection(),
        )
    }

    pub fn dim(&self, n: usize) -> usize {
        self.piece(n).dim()
    }

    /// `dim R_n` for `n = 0..=max_degree`.
    pub fn hilbert_series(&self, max_degree: usize) -> Vec<usize> {
        (0..=max_degree).map(|n| self.dim(n)).collect()
    }

    /// `out += c · [m]` where `m` is a monomial of degree `out`'s piece.
    pub fn accumulate_monomial(&self, piece: &QuotientPiece, m: &Monomial, c: u32, out: &mut [u32]) {
        let f = self.field();
        for &(k, a) in piece.normal_form(m) {
            out[k] = f.add(out[k], f.mul(a, c));
        }
    }

    /// Coordinates of the image of a polynomial in `R_n`; `p` must be
    /// homogeneous of degree `n` (or zero).
    pub fn reduce(&self, p: &Poly, n: usize) -> Result<Vec<u32>, AlgebraError> {
        let piece = self.piece(n);
        let mut out = vec![0; piece.dim()];
        for (m, c) in p.terms() {
            if m.degree() != n {
                return Err(AlgebraError::NotHomogeneous);
            }
            self.accumulate_monomial(&piece, m, c, &mut out);
        }
        Ok(out)
    }

    /// Matrix of multiplication by `p`, `R_n → R_{n + deg p}`, with columns
    /// indexed by the basis of `R_n`. The zero polynomial counts as degree 0.
    pub fn multiply_into_quotient(&self, p: &Poly, n: usize) -> Result<PrimeFieldMatrix, AlgebraError> {
        let e = if p.is_zero() {
            0
        } else {
            p.homogeneous_degree().ok_or(AlgebraError::NotHomogeneous)?
        };
        let src = self.piece(n);
        let dst = self.piece(n + e);
        let columns: Vec<Vec<u32>> = src
            .basis_monomials()
            .map(|beta| {
                let mut col = vec![0; dst.dim()];
                for (m, c) in p.terms() {
                    self.accumulate_monomial(&dst, &m.mul(beta), c, &mut col);
                }
                col
            })
            .collect();
        Ok(PrimeFieldMatrix::from_columns(self.field(), dst.dim(), &columns))
    }
}

impl fmt::Display for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ring();
        write!(f, "F_{}[{}]", ring.field().characteristic(), ring.variables().join(", "))?;
        if !self.ideal().is_zero() {
            let gens: Vec<String> = self.ideal().generators().iter().map(|g| ring.render(g)).collect();
            write!(f, "/({})", gens.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(vars: &[&str], p: u32) -> PolyRing {
        PolyRing::new(vars.iter().copied(), FieldSpec::new(p).unwrap()).unwrap()
    }

    fn mono(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    fn poly(r: &PolyRing, terms: &[(&[u16], i64)]) -> Poly {
        let mut p = r.zero();
        for &(e, c) in terms {
            p.add_term(mono(e), r.field().reduce(c));
        }
        p
    }

    fn quotient(r: &PolyRing, gens: Vec<Poly>) -> QuotientRing {
        QuotientRing::new(r.clone(), GradedIdeal::new(r, gens).unwrap())
    }

    /// All degree-n monomials of (x,y)^k as generators.
    fn power_of_max(r: &PolyRing, k: usize) -> Vec<Poly> {
        monomial_basis(r, k).into_iter().map(|m| Poly::monomial(r.field(), m, 1)).collect()
    }

    #[test]
    fn ring_validation() {
        let f = FieldSpec::default();
        assert!(matches!(PolyRing::new(["x", "x"], f), Err(AlgebraError::DuplicateVariable(_))));
        assert!(matches!(PolyRing::new(["1x"], f), Err(AlgebraError::InvalidVariable(_))));
    }

    #[test]
    fn monomial_basis_examples() {
        let r = ring(&["x", "y"], 7);
        assert_eq!(
            monomial_basis(&r, 3),
            vec![mono(&[3, 0]), mono(&[2, 1]), mono(&[1, 2]), mono(&[0, 3])]
        );
        assert_eq!(monomial_basis(&r, 0), vec![mono(&[0, 0])]);
        let r3 = ring(&["x", "y", "z"], 7);
        assert_eq!(monomial_basis(&r3, 2).len(), 6);
        for n in 0..6 {
            assert_eq!(monomial_basis(&r3, n).len() as u128, monomial_count(3, n));
        }
    }

    #[test]
    fn grevlex_is_a_permutation_of_grlex() {
        let r = ring(&["x", "y", "z"], 7);
        let rev = r.clone().with_order(MonomialOrder::GRevLex);
        let mut a = monomial_basis(&r, 3);
        let mut b = monomial_basis(&rev, 3);
        // In grevlex x y z^... order differs from grlex in degree 2 already: y² > xz.
        assert_ne!(a, b);
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn ideal_piece_examples() {
        let r = ring(&["x", "y"], 32003);
        let i = GradedIdeal::new(&r, vec![poly(&r, &[(&[2, 0], 1)])]).unwrap();
        let p2 = ideal_piece(&i, &r, 2);
        assert_eq!(p2.rows(), 1);
        assert_eq!(p2.row(0), &[1, 0, 0]);
        assert_eq!(ideal_piece(&i, &r, 3).rows(), 2);

        let m4 = GradedIdeal::new(&r, power_of_max(&r, 4)).unwrap();
        assert_eq!(ideal_piece(&m4, &r, 5).rows(), 6);
    }

    #[test]
    fn quotient_dims() {
        let r = ring(&["x", "y"], 32003);
        let q = quotient(&r, power_of_max(&r, 4));
        assert_eq!(q.hilbert_series(5), vec![1, 2, 3, 4, 0, 0]);

        let xy = quotient(&r, vec![poly(&r, &[(&[1, 1], 1)])]);
        assert_eq!(xy.hilbert_series(3), vec![1, 2, 2, 2]);

        let rx = ring(&["x"], 32003);
        let q4 = quotient(&rx, vec![poly(&rx, &[(&[4], 1)])]);
        assert_eq!(q4.hilbert_series(5), vec![1, 1, 1, 1, 0, 0]);

        assert_eq!(QuotientRing::ambient(r).hilbert_series(3), vec![1, 2, 3, 4]);
    }

    #[test]
    fn projection_after_inclusion_is_identity() {
        let r = ring(&["x", "y", "z"], 32003);
        let q = quotient(
            &r,
            vec![
                poly(&r, &[(&[1, 1, 0], 1), (&[0, 0, 2], -1)]),
                poly(&r, &[(&[2, 0, 0], 3), (&[0, 1, 1], 1)]),
            ],
        );
        for n in 0..5 {
            let piece = q.piece(n);
            let comp = piece.projection().mul(&piece.inclusion()).unwrap();
            assert_eq!(comp, PrimeFieldMatrix::identity(q.field(), piece.dim()));
            let (dim, basis, _) = q.quotient_piece(n);
            assert_eq!(dim, basis.len());
            assert_eq!(dim, piece.ambient_dim() - ideal_piece(q.ideal(), &r, n).rows());
        }
    }

    #[test]
    fn projection_kills_ideal() {
        let r = ring(&["x", "y", "z"], 101);
        let g = poly(&r, &[(&[1, 1, 0], 1), (&[0, 0, 2], -1), (&[2, 0, 0], 5)]);
        let q = quotient(&r, vec![g.clone()]);
        for n in 2..5 {
            let piece = q.piece(n);
            let ip = ideal_piece(q.ideal(), &r, n);
            let killed = piece.projection().mul(&ip.transpose()).unwrap();
            assert!(killed.is_zero());
        }
    }

    #[test]
    fn multiplication_maps() {
        let rx = ring(&["x"], 32003);
        let q4 = quotient(&rx, vec![poly(&rx, &[(&[4], 1)])]);
        let one = rx.one();
        assert_eq!(q4.multiply_into_quotient(&one, 2).unwrap(), PrimeFieldMatrix::identity(q4.field(), 1));
        let x = rx.var(0);
        assert!(q4.multiply_into_quotient(&x, 3).unwrap().is_zero());

        let inhom = poly(&rx, &[(&[1], 1), (&[2], 1)]);
        assert_eq!(q4.multiply_into_quotient(&inhom, 0), Err(AlgebraError::NotHomogeneous));
    }

    #[test]
    fn ideal_validation() {
        let r = ring(&["x", "y"], 7);
        assert_eq!(GradedIdeal::new(&r, vec![r.zero()]), Err(AlgebraError::ZeroGenerator));
        let inhom = poly(&r, &[(&[1, 0], 1), (&[1, 1], 1)]);
        assert_eq!(GradedIdeal::new(&r, vec![inhom]), Err(AlgebraError::NotHomogeneous));
    }

    #[test]
    fn render_examples() {
        let r = ring(&["x", "y"], 7);
        let p = poly(&r, &[(&[2, 1], 3), (&[0, 3], 2), (&[1, 2], -1)]);
        assert_eq!(r.render(&p), "3*x^2*y - x*y^2 + 2*y^3");
        assert_eq!(r.render(&r.zero()), "0");
        assert_eq!(r.render(&r.one()), "1");
    }

    fn arb_monomial_ideal() -> impl Strategy<Value = Vec<Vec<u16>>> {
        proptest::collection::vec(proptest::collection::vec(0u16..4, 3), 1..5)
            .prop_filter("nonconstant", |g| g.iter().all(|e| e.iter().sum::<u16>() > 0))
    }

    proptest! {
        #[test]
        fn monomial_ideal_dims_match_count(gens in arb_monomial_ideal()) {
            let r = ring(&["x", "y", "z"], 32003);
            let g: Vec<Poly> = gens.iter().map(|e| Poly::monomial(r.field(), mono(e), 1)).collect();
            let q = quotient(&r, g);
            for n in 0..6 {
                let outside = monomial_basis(&r, n)
                    .into_iter()
                    .filter(|m| !gens.iter().any(|e| mono(e).divides(m)))
                    .count();
                prop_assert_eq!(q.dim(n), outside);
            }
        }

        #[test]
        fn multiplication_is_multiplicative(
            a in proptest::collection::vec(-3i64..4, 3),
            b in proptest::collection::vec(-3i64..4, 6),
            n in 0usize..3,
        ) {
            let r = ring(&["x", "y", "z"], 32003);
            let q = quotient(&r, vec![
                poly(&r, &[(&[1, 1, 0], 1), (&[0, 0, 2], -1)]),
                poly(&r, &[(&[0, 2, 1], 2), (&[3, 0, 0], 1)]),
            ]);
            let lin: Vec<(&[u16], i64)> = vec![(&[1, 0, 0], a[0]), (&[0, 1, 0], a[1]), (&[0, 0, 1], a[2])];
            let quad_monos = monomial_basis(&r, 2);
            let pq: Vec<(&[u16], i64)> = quad_monos.iter().zip(&b).map(|(m, &c)| (m.exponents(), c)).collect();
            let p = poly(&r, &lin);
            let qq = poly(&r, &pq);
            if p.is_zero() || qq.is_zero() {
                prop_assert!(q.multiply_into_quotient(&p.mul(&qq), n).unwrap().is_zero());
                return Ok(());
            }
            let direct = q.multiply_into_quotient(&p.mul(&qq), n).unwrap();
            let composed = q
                .multiply_into_quotient(&p, n + 2).unwrap()
                .mul(&q.multiply_into_quotient(&qq, n).unwrap()).unwrap();
            prop_assert_eq!(direct, composed);
        }

        #[test]
        fn ideal_pieces_are_closed_under_variables(n in 2usize..5) {
            let r = ring(&["x", "y", "z"], 32003);
            let i = GradedIdeal::new(&r, vec![
                poly(&r, &[(&[1, 1, 0], 1), (&[0, 0, 2], 5)]),
                poly(&r, &[(&[2, 0, 0], 1), (&[0, 1, 1], -2)]),
            ]).unwrap();
            let lower = ideal_piece(&i, &r, n);
            let upper = ideal_piece(&i, &r, n + 1);
            let lower_monos = monomial_basis(&r, n);
            let upper_index = index_of(&monomial_basis(&r, n + 1));
            let mut span = EchelonBasis::new(r.field(), upper.cols());
            for k in 0..upper.rows() {
                span.insert(upper.row(k));
            }
            for row in 0..lower.rows() {
                for v in 0..3 {
                    let mut w = vec![0u32; upper.cols()];
                    for (j, &c) in lower.row(row).iter().enumerate() {
                        if c != 0 {
                            w[upper_index[&lower_monos[j].mul(&Monomial::var(3, v))]] = c;
                        }
                    }
                    prop_assert!(span.contains(&w));
                }
            }
        }
    }
}
