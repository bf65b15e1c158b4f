use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One signed exponent per ring variable.
pub type ExponentVector = Vec<i64>;

/// Ordered list of variable names. Two rings are equal iff they list the
/// same names in the same order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ring {
    vars: Arc<[String]>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidArgument(format!(
                    "`{v}` is not a valid variable name"
                )));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Ring { vars: vars.into() })
    }

    /// The torus ring `Q, X, P` used by the bundled knot examples.
    pub fn torus() -> Self {
        Ring::new(&["Q", "X", "P"]).unwrap()
    }

    pub fn empty() -> Self {
        Ring { vars: Arc::from(Vec::<String>::new()) }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.vars.iter().any(|v| v == name)
    }

    /// This ring followed by `extra` variables.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Self> {
        let mut all: Vec<String> = self.vars.to_vec();
        all.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Ring::new(&all)
    }

    /// This ring with `name` removed.
    pub fn without(&self, name: &str) -> Result<Self> {
        self.index_of(name)?;
        let rest: Vec<&String> = self.vars.iter().filter(|v| *v != name).collect();
        Ring::new(&rest)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.vars.join(", "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Canonical term order: ascending total degree, ties broken by descending
/// lexicographic comparison of exponent vectors. For the ring `Q, X, P` this
/// prints `1 - X - P + Q*X*P`.
pub fn canonical_cmp(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

/// Exact Laurent polynomial over the Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPolynomial {
    ring: Ring,
    terms: BTreeMap<ExponentVector, Scalar>,
}

impl LaurentPolynomial {
    pub fn zero(ring: &Ring) -> Self {
        LaurentPolynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Scalar::one())
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Self {
        Self::monomial(ring, vec![0; ring.len()], c)
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self> {
        let i = ring.index_of(name)?;
        let mut e = vec![0; ring.len()];
        e[i] = 1;
        Ok(Self::monomial(ring, e, Scalar::one()))
    }

    /// `c * vars^exps`. Panics if `exps` has the wrong length.
    pub fn monomial(ring: &Ring, exps: ExponentVector, c: Scalar) -> Self {
        assert_eq!(exps.len(), ring.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPolynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, Scalar)>,
    {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&vec![0; self.ring.len()])
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn coefficient(&self, exps: &[i64]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> Vec<(&ExponentVector, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| canonical_cmp(a.0, b.0));
        v
    }

    /// Terms in the underlying lexicographic storage order.
    pub fn raw_terms(&self) -> impl Iterator<Item = (&ExponentVector, &Scalar)> {
        self.terms.iter()
    }

    pub(crate) fn add_term(&mut self, exps: ExponentVector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut acc: HashMap<ExponentVector, Scalar> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: ExponentVector = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let prod = ca * cb;
                acc.entry(e)
                    .and_modify(|c| *c += &prod)
                    .or_insert(prod);
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentPolynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        LaurentPolynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the unit monomial `vars^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.ring.len());
        LaurentPolynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a point given as a slice aligned with the ring variables.
    pub fn eval_slice(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.ring.len() {
            return Err(Error::InvalidArgument(format!(
                "point has {} coordinates, ring [{}] needs {}",
                point.len(),
                self.ring,
                self.ring.len()
            )));
        }
        let mut inverses: Vec<Option<Scalar>> = vec![None; point.len()];
        let mut total = Scalar::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if k > 0 {
                    term = &term * &point[i].pow_u(k as u64);
                } else {
                    if inverses[i].is_none() {
                        inverses[i] = Some(point[i].inv().ok_or_else(|| {
                            Error::Domain(format!(
                                "`{}` = 0 but appears with exponent {k}",
                                self.ring.vars()[i]
                            ))
                        })?);
                    }
                    term = &term * &inverses[i].as_ref().unwrap().pow_u(k.unsigned_abs());
                }
            }
            total += &term;
        }
        Ok(total)
    }

    /// Evaluates at a point keyed by variable name; every ring variable must
    /// be assigned.
    pub fn eval(&self, point: &HashMap<String, Scalar>) -> Result<Scalar> {
        let slice = self
            .ring
            .vars()
            .iter()
            .map(|v| {
                point
                    .get(v)
                    .cloned()
                    .ok_or_else(|| Error::InvalidArgument(format!("no value for `{v}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.eval_slice(&slice)
    }

    /// Floating-point evaluation; compare results with a tolerance of 1e-9.
    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.ring.len());
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.to_complex(), |acc, (&k, z)| acc * z.powi(k as i32))
            })
            .sum()
    }

    /// Substitutes a scalar for one variable, keeping the ring (the variable's
    /// exponent becomes 0 everywhere).
    pub fn substitute(&self, var: &str, value: &Scalar) -> Result<Self> {
        let i = self.ring.index_of(var)?;
        let inv = value.inv();
        let mut out = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            let k = e[i];
            let factor = if k >= 0 {
                value.pow_u(k as u64)
            } else {
                inv.as_ref()
                    .ok_or_else(|| {
                        Error::Domain(format!("`{var}` = 0 but appears with exponent {k}"))
                    })?
                    .pow_u(k.unsigned_abs())
            };
            let mut e2 = e.clone();
            e2[i] = 0;
            out.add_term(e2, &(c * &factor));
        }
        Ok(out)
    }

    /// Applies `x d/dx` where the ring variable `var` stands for `e^x`:
    /// `var^k * m ↦ k * var^k * m`.
    pub fn x_log_derivative(&self, var: &str) -> Result<Self> {
        let i = self.ring.index_of(var)?;
        let mut out = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &(c * &Scalar::from_int(e[i])));
        }
        Ok(out)
    }

    /// Ordinary partial derivative with respect to `var`.
    pub fn derivative(&self, var: &str) -> Result<Self> {
        let i = self.ring.index_of(var)?;
        let mut out = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, &(c * &Scalar::from_int(e[i])));
        }
        Ok(out)
    }

    pub fn max_degree(&self, var: &str) -> Result<Option<i64>> {
        let i = self.ring.index_of(var)?;
        Ok(self.terms.keys().map(|e| e[i]).max())
    }

    pub fn min_degree(&self, var: &str) -> Result<Option<i64>> {
        let i = self.ring.index_of(var)?;
        Ok(self.terms.keys().map(|e| e[i]).min())
    }

    /// Splits by powers of `var`; each coefficient keeps the ring with the
    /// `var` exponent set to 0.
    pub fn coefficients_in(&self, var: &str) -> Result<BTreeMap<i64, LaurentPolynomial>> {
        let i = self.ring.index_of(var)?;
        let mut out: BTreeMap<i64, LaurentPolynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] = 0;
            out.entry(e[i])
                .or_insert_with(|| Self::zero(&self.ring))
                .add_term(e2, c);
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in `target`, which must contain every
    /// variable that occurs with a nonzero exponent.
    pub fn embed(&self, target: &Ring) -> Result<Self> {
        let mut map = Vec::with_capacity(self.ring.len());
        for v in self.ring.vars() {
            map.push(target.index_of(v).ok());
        }
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| Error::UnknownVariable(self.ring.vars()[i].clone()))?;
                e2[j] += k;
            }
            out.add_term(e2, c);
        }
        Ok(out)
    }

    /// Component-wise minimum exponent over all terms (zeros for the zero
    /// polynomial).
    pub fn min_exponents(&self) -> ExponentVector {
        let mut m: Option<ExponentVector> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.ring.len()])
    }

    /// Multiplies by the unique monomial that makes every exponent
    /// non-negative with no common monomial factor. Returns the result and
    /// the monomial exponent that was applied.
    pub fn clear_monomial_factor(&self) -> (Self, ExponentVector) {
        let shift: ExponentVector = self.min_exponents().iter().map(|x| -x).collect();
        (self.shift(&shift), shift)
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k >= 0))
    }

    /// Scales so the coefficients are coprime Gaussian integers and the
    /// leading coefficient (greatest term in canonical order) has positive
    /// real part and non-negative imaginary part.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(&c.denominator_lcm());
        }
        let scaled = self.scale(&Scalar::real(BigRational::from_integer(den)));
        let mut g = BigInt::zero();
        for c in scaled.terms.values() {
            g = g.gcd(c.re.numer());
            g = g.gcd(c.im.numer());
        }
        let mut out = scaled.scale(&Scalar::real(BigRational::new(BigInt::one(), g)));
        let lead = out.leading_coefficient();
        // Units of Z[i] are ±1, ±i; pick the one putting `lead` in re>0, im>=0.
        let unit = if lead.re.is_positive() && !lead.im.is_negative() {
            Scalar::one()
        } else if lead.re.is_negative() && !lead.im.is_positive() {
            Scalar::from_int(-1)
        } else if !lead.re.is_positive() && lead.im.is_positive() {
            Scalar::gaussian(0, -1)
        } else {
            Scalar::i()
        };
        out = out.scale(&unit);
        out
    }

    /// Coefficient of the greatest term in canonical order.
    pub fn leading_coefficient(&self) -> Scalar {
        self.terms
            .iter()
            .max_by(|a, b| canonical_cmp(a.0, b.0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// Whether the polynomial is a single term (a unit of the Laurent ring).
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    /// Inverse of a single-term polynomial.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Self::monomial(
            &self.ring,
            e.iter().map(|k| -k).collect(),
            c.inv()?,
        ))
    }

    /// Whether any term involves `var`.
    pub fn involves(&self, var: &str) -> Result<bool> {
        let i = self.ring.index_of(var)?;
        Ok(self.terms.keys().any(|e| e[i] != 0))
    }
}

impl<'a> Add<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    /// Panics on mismatched rings; use `checked_add` for fallible input.
    fn add(self, rhs: &'a LaurentPolynomial) -> LaurentPolynomial {
        self.checked_add(rhs).expect("ring mismatch in add")
    }
}

impl<'a> Sub<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &'a LaurentPolynomial) -> LaurentPolynomial {
        self.checked_sub(rhs).expect("ring mismatch in sub")
    }
}

impl<'a> Mul<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &'a LaurentPolynomial) -> LaurentPolynomial {
        self.checked_mul(rhs).expect("ring mismatch in mul")
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self + &rhs
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self - &rhs
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self * &rhs
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

fn fmt_monomial(ring: &Ring, e: &[i64]) -> String {
    let mut parts = Vec::new();
    for (v, &k) in ring.vars().iter().zip(e) {
        match k {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{k}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms().into_iter().enumerate() {
            let mono = fmt_monomial(&self.ring, e);
            let negative = c.is_negative_real();
            let mag = if negative { -c } else { c.clone() };
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            match (idx, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        f.write_str(&out)
    }
}
