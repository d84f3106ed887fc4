//! Univariate polynomial algebra over GF(3^k).
//!
//! Polynomials are dense coefficient vectors, lowest degree first, with a
//! nonzero leading coefficient (the zero polynomial is an empty vector).
//! Everything here is exact: arithmetic, gcd, a squarefree decomposition
//! that is correct in characteristic 3 (where a vanishing derivative signals
//! cube structure, extracted through coefficient cube roots), and a full
//! factorization into monic irreducibles by distinct-degree splitting
//! followed by seeded Cantor-Zassenhaus equal-degree splitting.
//!
//! All operations are pure functions on immutable values.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ff::{embed, Field, FieldElement, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroInput,
    #[error("polynomials belong to different coefficient fields")]
    MixedFields,
    #[error("invalid polynomial string `{0}`")]
    BadString(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Dense univariate polynomial over a [`Field`], lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pretty())
    }
}

/// Serialization: semicolon-separated element digit vectors, lowest degree
/// first, e.g. over GF(9) `1,0;2,0;0,1` = 1 + 2t + i t^2.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "{}", self.field.zero());
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Poly {
        let field = c.field().clone();
        let coeffs = if c.is_zero() { Vec::new() } else { vec![c] };
        Poly { field, coeffs }
    }

    /// The indeterminate t.
    pub fn t(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: vec![field.zero(), field.one()],
        }
    }

    /// c * t^n.
    pub fn monomial(c: FieldElement, n: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero(c.field());
        }
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = c;
        Poly { field, coeffs }
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<FieldElement>) -> Poly {
        for c in &coeffs {
            assert!(c.field() == field, "coefficient from a different field");
        }
        let mut p = Poly {
            field: field.clone(),
            coeffs,
        };
        p.normalize();
        p
    }

    /// Convenience constructor from integer coefficients, lowest degree first.
    pub fn from_ints(field: &Field, ints: &[i64]) -> Poly {
        let coeffs = ints.iter().map(|&n| field.from_int(n)).collect();
        Poly::from_coeffs(field, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with deg 0 for constants and the zero polynomial.
    pub fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    /// Coefficient of t^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> FieldElement {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Order of vanishing at t = 0; `None` for the zero polynomial.
    pub fn ord_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    fn assert_same_field(&self, other: &Poly) {
        assert!(
            self.field == other.field,
            "polynomials over different fields"
        );
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Substitute another polynomial for t.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.assert_same_field(inner);
        let mut acc = Poly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Substitute t + c for t.
    pub fn shift(&self, c: &FieldElement) -> Poly {
        let inner = Poly::from_coeffs(&self.field, vec![c.clone(), self.field.one()]);
        self.compose(&inner)
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    /// Quotient and remainder; `g` must be nonzero.
    pub fn divmod(&self, g: &Poly) -> Result<(Poly, Poly), PolyError> {
        self.assert_same_field(g);
        if g.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let dg = g.degree().unwrap();
        let lead_inv = g.leading_coeff().inverse().expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(dg)];
        while rem.len() > dg {
            let lead = rem.last().unwrap().clone();
            let shift = rem.len() - 1 - dg;
            if !lead.is_zero() {
                let q = &lead * &lead_inv;
                for (j, gc) in g.coeffs.iter().enumerate() {
                    let t = &rem[shift + j] - &(&q * gc);
                    rem[shift + j] = t;
                }
                quot[shift] = q;
            }
            rem.pop();
            while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
                rem.pop();
            }
        }
        Ok((
            Poly::from_coeffs(&self.field, quot),
            Poly::from_coeffs(&self.field, rem),
        ))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly, PolyError> {
        Ok(self.divmod(g)?.1)
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn exact_div(&self, g: &Poly) -> Poly {
        let (q, r) = self.divmod(g).expect("division by zero polynomial");
        assert!(r.is_zero(), "exact_div with nonzero remainder");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.into_monic().1
    }

    /// Split into (leading unit, monic part); the zero polynomial yields (1, 0).
    pub fn into_monic(self) -> (FieldElement, Poly) {
        if self.is_zero() {
            return (self.field.one(), self);
        }
        let unit = self.leading_coeff();
        let inv = unit.inverse().unwrap();
        (unit, self.scale(&inv))
    }

    pub fn monic(&self) -> Poly {
        self.clone().into_monic().1
    }

    /// Formal derivative; in characteristic 3 every t^(3m) term vanishes.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_int(i as i64))
            .collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Map all coefficients into a compatible extension field.
    pub fn embed_into(&self, target: &Field) -> Result<Poly, FieldError> {
        let coeffs: Result<Vec<_>, _> = self.coeffs.iter().map(|c| embed(c, target)).collect();
        Ok(Poly::from_coeffs(target, coeffs?))
    }

    /// For f with f' = 0 (so every exponent is a multiple of 3), the unique h
    /// with h^3 = f, via coefficient cube roots.
    fn cube_structure(&self) -> Poly {
        debug_assert!(self.derivative().is_zero());
        let mut coeffs = Vec::with_capacity(self.coeffs.len() / 3 + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % 3 == 0 {
                coeffs.push(c.cube_root());
            } else {
                debug_assert!(c.is_zero(), "vanishing derivative in char 3");
            }
        }
        Poly::from_coeffs(&self.field, coeffs)
    }

    /// Squarefree decomposition f = unit * prod g_i^(m_i) with the g_i monic,
    /// squarefree and pairwise coprime. Correct in characteristic 3: stages
    /// with vanishing derivative are perfect cubes, handled recursively with
    /// tripled multiplicities.
    pub fn squarefree_decomposition(&self) -> Result<(FieldElement, Vec<(Poly, u32)>), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let (unit, f) = self.clone().into_monic();
        let mut parts = sqf_rec(&f, 1);
        parts.sort_by(|a, b| (a.1, poly_sort_key(&a.0)).cmp(&(b.1, poly_sort_key(&b.0))));
        Ok((unit, merge_equal_factors(parts)))
    }

    /// Complete factorization into monic irreducibles, deterministic for a
    /// given seed.
    pub fn factor_seeded(&self, seed: u64) -> Result<Factorization, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let (unit, sqf) = self.squarefree_decomposition()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut factors: Vec<(Poly, u32)> = Vec::new();
        for (g, mult) in sqf {
            for irr in factor_squarefree(&g, &mut rng) {
                factors.push((irr, mult));
            }
        }
        factors.sort_by(|a, b| {
            (a.0.deg_or_zero(), poly_sort_key(&a.0), a.1)
                .cmp(&(b.0.deg_or_zero(), poly_sort_key(&b.0), b.1))
        });
        Ok(Factorization {
            unit,
            factors: merge_equal_factors(factors),
        })
    }

    /// Factorization with the default seed 0.
    pub fn factor(&self) -> Result<Factorization, PolyError> {
        self.factor_seeded(0)
    }

    /// Multiplicities of the roots over the algebraic closure: an irreducible
    /// factor of degree d and multiplicity e contributes d closure roots of
    /// multiplicity e. Independent of the field of definition.
    pub fn multiplicity_profile(&self) -> Result<MultiplicityProfile, PolyError> {
        let f = self.factor()?;
        let mut counts = std::collections::BTreeMap::new();
        for (g, e) in &f.factors {
            *counts.entry(*e).or_insert(0u32) += g.deg_or_zero() as u32;
        }
        Ok(MultiplicityProfile { counts })
    }

    /// Roots in the coefficient field, each with multiplicity, in lex order.
    pub fn roots(&self) -> Result<Vec<(FieldElement, u32)>, PolyError> {
        let f = self.factor()?;
        let mut out = Vec::new();
        for (g, e) in &f.factors {
            if g.deg_or_zero() == 1 {
                out.push((-&g.coeff(0), *e));
            }
        }
        out.sort_by_key(|(r, _)| r.lex_value());
        Ok(out)
    }

    /// Parse the `;`-separated digit-vector form.
    pub fn parse(field: &Field, s: &str) -> Result<Poly, PolyError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PolyError::BadString(s.to_string()));
        }
        let coeffs: Result<Vec<FieldElement>, FieldError> = s
            .split(';')
            .map(|part| field.parse_element(part.trim()))
            .collect();
        Ok(Poly::from_coeffs(field, coeffs?))
    }

    /// Human-readable form like `t^12+2t^3+1` (prime-field coefficients print
    /// bare; extension coefficients print as bracketed digit vectors).
    pub fn to_pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff_str = if self.field.degree() == 1 {
                c.digits()[0].to_string()
            } else {
                format!("[{}]", c)
            };
            let part = match i {
                0 => coeff_str,
                1 if c.is_one() => "t".to_string(),
                1 => format!("{}t", coeff_str),
                _ if c.is_one() => format!("t^{}", i),
                _ => format!("{}t^{}", coeff_str, i),
            };
            parts.push(part);
        }
        parts.join("+")
    }
}

/// Deterministic ordering key: digit vectors from the top coefficient down.
fn poly_sort_key(p: &Poly) -> Vec<u64> {
    p.coeffs().iter().rev().map(|c| c.lex_value()).collect()
}

fn merge_equal_factors(sorted: Vec<(Poly, u32)>) -> Vec<(Poly, u32)> {
    let mut out: Vec<(Poly, u32)> = Vec::with_capacity(sorted.len());
    for (p, e) in sorted {
        if let Some(last) = out.last_mut() {
            if last.0 == p {
                last.1 += e;
                continue;
            }
        }
        out.push((p, e));
    }
    out
}

/// Characteristic-p squarefree decomposition of a monic f, with all
/// multiplicities scaled by `scale`.
fn sqf_rec(f: &Poly, scale: u32) -> Vec<(Poly, u32)> {
    debug_assert!(f.is_monic());
    if f.deg_or_zero() == 0 {
        return Vec::new();
    }
    let fp = f.derivative();
    if fp.is_zero() {
        // f = h^3 exactly, by the Frobenius inverse on coefficients
        let h = f.cube_structure();
        return sqf_rec(&h, scale * 3);
    }
    let mut out = Vec::new();
    let mut c = f.gcd(&fp);
    let mut w = f.exact_div(&c);
    // w is the product of the distinct factors whose multiplicity is not
    // divisible by 3; peel multiplicities 1, 2, ... off it
    let mut i = 1u32;
    while w.deg_or_zero() > 0 {
        let y = w.gcd(&c);
        let z = w.exact_div(&y);
        if z.deg_or_zero() > 0 {
            out.push((z, scale * i));
        }
        w = y.clone();
        c = c.exact_div(&y);
        i += 1;
    }
    // what is left in c has every factor with multiplicity divisible by 3
    if c.deg_or_zero() > 0 {
        out.extend(sqf_rec(&c.cube_structure(), scale * 3));
    }
    out
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

/// A complete factorization: `unit * prod factors[i].0 ^ factors[i].1`,
/// factors monic irreducible and pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(self.unit.clone());
        for (p, e) in &self.factors {
            acc = &acc * &p.pow(*e);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// h^q mod g computed by k rounds of cubing (q = 3^k).
fn pow_q_mod(h: &Poly, g: &Poly) -> Poly {
    let k = g.field().degree();
    let mut cur = h.rem(g).unwrap();
    for _ in 0..k {
        let sq = (&cur * &cur).rem(g).unwrap();
        cur = (&sq * &cur).rem(g).unwrap();
    }
    cur
}

/// h^((q^d - 1)/2) mod g, using (3^m - 1)/2 = 1 + 3 + ... + 3^(m-1).
fn pow_half_order_mod(h: &Poly, d: usize, g: &Poly) -> Poly {
    let m = g.field().degree() * d;
    let mut acc = h.rem(g).unwrap();
    let mut cur = h.rem(g).unwrap();
    for _ in 1..m {
        let sq = (&cur * &cur).rem(g).unwrap();
        cur = (&sq * &cur).rem(g).unwrap();
        acc = (&acc * &cur).rem(g).unwrap();
    }
    acc
}

/// Distinct-degree then Cantor-Zassenhaus equal-degree splitting of a monic
/// squarefree polynomial.
fn factor_squarefree(f: &Poly, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    debug_assert!(f.is_monic());
    let field = f.field().clone();
    let mut out = Vec::new();
    let mut rest = f.clone();
    let t = Poly::t(&field);
    if rest.deg_or_zero() == 0 {
        return out;
    }
    let mut frob = t.rem(&rest).unwrap();
    let mut d = 1usize;
    while rest.deg_or_zero() >= 2 * d {
        frob = pow_q_mod(&frob, &rest);
        let diff = &frob - &t;
        let g = diff.gcd(&rest);
        if g.deg_or_zero() > 0 {
            // g is the product of all irreducible factors of degree exactly d
            equal_degree_split(&g, d, rng, &mut out);
            rest = rest.exact_div(&g);
            if rest.deg_or_zero() == 0 {
                break;
            }
            frob = frob.rem(&rest).unwrap();
        }
        d += 1;
    }
    if rest.deg_or_zero() > 0 {
        out.push(rest);
    }
    out
}

/// Cantor-Zassenhaus for odd field size: split `g`, a product of distinct
/// monic irreducibles all of degree d.
fn equal_degree_split(g: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = g.deg_or_zero();
    if n == d {
        out.push(g.monic());
        return;
    }
    let field = g.field().clone();
    loop {
        // random polynomial of degree < n
        let coeffs: Vec<FieldElement> = (0..n)
            .map(|_| {
                let v = rng.gen_range(0..field.order());
                let mut digits = vec![0u8; field.degree()];
                let mut x = v;
                for dg in digits.iter_mut() {
                    *dg = (x % 3) as u8;
                    x /= 3;
                }
                field.from_digits(&digits)
            })
            .collect();
        let h = Poly::from_coeffs(&field, coeffs);
        if h.is_zero() {
            continue;
        }
        let e = pow_half_order_mod(&h, d, g);
        let e1 = &e - &Poly::one(&field);
        let split = e1.gcd(g);
        let k = split.deg_or_zero();
        if k > 0 && k < n {
            let other = g.exact_div(&split);
            equal_degree_split(&split, d, rng, out);
            equal_degree_split(&other, d, rng, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// MultiplicityProfile
// ---------------------------------------------------------------------------

/// The multiset of closure-root multiplicities: `counts[e]` closure roots of
/// multiplicity e. Encodes partitions like `5 3^2 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityProfile {
    counts: std::collections::BTreeMap<u32, u32>,
}

impl MultiplicityProfile {
    pub fn from_pairs(pairs: &[(u32, u32)]) -> MultiplicityProfile {
        let mut counts = std::collections::BTreeMap::new();
        for &(e, c) in pairs {
            if c > 0 {
                *counts.entry(e).or_insert(0) += c;
            }
        }
        MultiplicityProfile { counts }
    }

    pub fn from_parts(parts: &[u32]) -> MultiplicityProfile {
        let mut counts = std::collections::BTreeMap::new();
        for &e in parts {
            *counts.entry(e).or_insert(0) += 1;
        }
        MultiplicityProfile { counts }
    }

    /// Partition form, largest part first, with repetitions.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (&e, &c) in self.counts.iter().rev() {
            for _ in 0..c {
                out.push(e);
            }
        }
        out
    }

    pub fn counts(&self) -> &std::collections::BTreeMap<u32, u32> {
        &self.counts
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().map(|(&e, &c)| e * c).sum()
    }

    /// Multiset union (profile of a product of coprime polynomials).
    pub fn union(&self, other: &MultiplicityProfile) -> MultiplicityProfile {
        let mut counts = self.counts.clone();
        for (&e, &c) in &other.counts {
            *counts.entry(e).or_insert(0) += c;
        }
        MultiplicityProfile { counts }
    }
}

impl fmt::Display for MultiplicityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (&e, &c) in self.counts.iter().rev() {
            if c == 1 {
                parts.push(format!("{}", e));
            } else {
                parts.push(format!("{}^{}", e, c));
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

macro_rules! impl_poly_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl std::ops::$trait for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$impl_fn(rhs)
            }
        }
        impl std::ops::$trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$impl_fn(&rhs)
            }
        }
    };
}

impl Poly {
    fn add_impl(&self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    fn sub_impl(&self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    fn mul_impl(&self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = &coeffs[i + j] + &(a * b);
                coeffs[i + j] = t;
            }
        }
        Poly::from_coeffs(&self.field, coeffs)
    }
}

impl_poly_binop!(Add, add, add_impl);
impl_poly_binop!(Sub, sub, sub_impl);
impl_poly_binop!(Mul, mul, mul_impl);

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }
}
impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::gf3()
    }
    fn f9() -> Field {
        Field::with_degree(2).unwrap()
    }

    fn p3(ints: &[i64]) -> Poly {
        Poly::from_ints(&f3(), ints)
    }

    #[test]
    fn mul_examples() {
        // (t-1)(t+1) = t^2 - 1 = t^2 + 2
        assert_eq!(&p3(&[-1, 1]) * &p3(&[1, 1]), p3(&[2, 0, 1]));
        // (t-1)(t^11+t^10-t^9+t-1) = t^12+t^10+t^9+t^2+t+1
        let a = p3(&[-1, 1]);
        let b = p3(&[-1, 1, 0, 0, 0, 0, 0, 0, 0, -1, 1, 1]);
        let expect = p3(&[1, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1]);
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn divmod_examples() {
        // t^3 + 1 = (t+1)^3 in characteristic 3
        let f = p3(&[1, 0, 0, 1]);
        let g = p3(&[1, 1]);
        let (q, r) = f.divmod(&g).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, p3(&[1, -1, 1])); // t^2 - t + 1
        assert!(matches!(
            f.divmod(&Poly::zero(&f3())),
            Err(PolyError::DivisionByZero)
        ));
    }

    #[test]
    fn derivative_examples() {
        assert!(p3(&[1, 0, 0, 1]).derivative().is_zero()); // d/dt (t^3+1) = 0
        assert_eq!(p3(&[0, 1, 1]).derivative(), p3(&[1, 2])); // d/dt (t^2+t) = 2t+1
        assert_eq!(p3(&[0, 0, 0, 1, 1]).derivative(), p3(&[0, 0, 0, 1])); // t^4+t^3 -> t^3
    }

    #[test]
    fn squarefree_examples() {
        // (t-1)^2 (t+1)
        let f = &p3(&[-1, 1]).pow(2) * &p3(&[1, 1]);
        let (unit, parts) = f.squarefree_decomposition().unwrap();
        assert!(unit.is_one());
        assert_eq!(parts, vec![(p3(&[1, 1]), 1), (p3(&[-1, 1]), 2)]);

        // t^3 + 2 = (t-1)^3
        let f = p3(&[2, 0, 0, 1]);
        let (_, parts) = f.squarefree_decomposition().unwrap();
        assert_eq!(parts, vec![(p3(&[-1, 1]), 3)]);

        // t^6 (t^3+2) = t^6 (t-1)^3
        let f = &Poly::monomial(f3().one(), 6) * &p3(&[2, 0, 0, 1]);
        let (_, parts) = f.squarefree_decomposition().unwrap();
        assert_eq!(parts, vec![(p3(&[-1, 1]), 3), (p3(&[0, 1]), 6)]);
    }

    #[test]
    fn squarefree_pure_cube() {
        // multiplicities of f = g^3 are all multiples of 3
        let g = &p3(&[1, 1]) * &p3(&[2, 0, 1]); // (t+1)(t^2+2)
        let f = g.pow(3);
        let (_, parts) = f.squarefree_decomposition().unwrap();
        assert!(parts.iter().all(|(_, e)| e % 3 == 0));
        let rebuilt = parts
            .iter()
            .fold(Poly::one(&f3()), |acc, (p, e)| &acc * &p.pow(*e));
        assert_eq!(rebuilt, f.monic());
    }

    #[test]
    fn squarefree_random_reconstruction() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for field in [f3(), f9()] {
            for _ in 0..200 {
                let deg = rng.gen_range(1..=10);
                let ints: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..3)).collect();
                let f = Poly::from_ints(&field, &ints);
                if f.is_zero() {
                    continue;
                }
                let (unit, parts) = f.squarefree_decomposition().unwrap();
                let rebuilt = parts
                    .iter()
                    .fold(Poly::constant(unit), |acc, (p, e)| &acc * &p.pow(*e));
                assert_eq!(rebuilt, f, "reconstruction");
                for (i, (p, _)) in parts.iter().enumerate() {
                    assert!(p.is_monic());
                    assert_eq!(p.gcd(&p.derivative()).deg_or_zero(), 0, "squarefree");
                    for (q, _) in parts.iter().skip(i + 1) {
                        assert_eq!(p.gcd(q).deg_or_zero(), 0, "pairwise coprime");
                    }
                }
            }
        }
    }

    #[test]
    fn factor_examples() {
        // t^2+1 irreducible over GF(3)
        let f = p3(&[1, 0, 1]);
        assert!(f.factor().unwrap().is_irreducible());
        // ... but splits over GF(9) as (t-i)(t+i)
        let f9 = f9();
        let i = f9.generator();
        let f = Poly::from_coeffs(&f9, vec![f9.one(), f9.zero(), f9.one()]);
        let fac = f.factor().unwrap();
        assert_eq!(fac.factors.len(), 2);
        let roots: Vec<FieldElement> = fac.factors.iter().map(|(p, _)| -&p.coeff(0)).collect();
        assert!(roots.contains(&i) && roots.contains(&(-&i)));
        // the degree-12 product with a simple root at 1
        let f = p3(&[1, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1]);
        let fac = f.factor().unwrap();
        let lin = fac
            .factors
            .iter()
            .find(|(p, _)| p == &p3(&[-1, 1]))
            .expect("factor t-1 present");
        assert_eq!(lin.1, 1);
    }

    #[test]
    fn factor_roundtrip_random() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for field in [f3(), f9(), Field::with_degree(3).unwrap()] {
            for _ in 0..120 {
                let deg = rng.gen_range(1..=12);
                let coeffs: Vec<FieldElement> = (0..=deg)
                    .map(|_| {
                        let v = rng.gen_range(0..field.order());
                        let mut digits = vec![0u8; field.degree()];
                        let mut x = v;
                        for d in digits.iter_mut() {
                            *d = (x % 3) as u8;
                            x /= 3;
                        }
                        field.from_digits(&digits)
                    })
                    .collect();
                let f = Poly::from_coeffs(&field, coeffs);
                if f.is_zero() {
                    continue;
                }
                let fac = f.factor().unwrap();
                assert_eq!(fac.expand(), f, "factor/expand mismatch");
                for (p, _) in &fac.factors {
                    assert!(p.is_monic());
                }
            }
        }
    }

    #[test]
    fn factor_deterministic() {
        let f = p3(&[1, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1]);
        let a = f.factor_seeded(7).unwrap();
        let b = f.factor_seeded(7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn profile_examples() {
        // (t-1)^5 (t+1)^5 (t^2+i) over GF(9): partition 5^2 1^2
        let f9 = f9();
        let i = f9.generator();
        let a = Poly::from_coeffs(&f9, vec![-f9.one(), f9.one()]).pow(5);
        let b = Poly::from_coeffs(&f9, vec![f9.one(), f9.one()]).pow(5);
        let c = Poly::from_coeffs(&f9, vec![i, f9.zero(), f9.one()]);
        let f = &(&a * &b) * &c;
        let prof = f.multiplicity_profile().unwrap();
        assert_eq!(prof, MultiplicityProfile::from_pairs(&[(5, 2), (1, 2)]));
        assert_eq!(prof.parts(), vec![5, 5, 1, 1]);

        // t^2+1 over GF(3): two simple closure roots
        let prof = p3(&[1, 0, 1]).multiplicity_profile().unwrap();
        assert_eq!(prof, MultiplicityProfile::from_pairs(&[(1, 2)]));

        // t^12: a single root of multiplicity 12
        let prof = Poly::monomial(f3().one(), 12)
            .multiplicity_profile()
            .unwrap();
        assert_eq!(prof, MultiplicityProfile::from_pairs(&[(12, 1)]));
    }

    #[test]
    fn profile_union_on_coprime_product() {
        let a = p3(&[2, 0, 1]); // t^2+2 = (t-1)(t+1)
        let b = p3(&[0, 1]).pow(3); // t^3
        let pa = a.multiplicity_profile().unwrap();
        let pb = b.multiplicity_profile().unwrap();
        let pab = (&a * &b).multiplicity_profile().unwrap();
        assert_eq!(pab, pa.union(&pb));
    }

    #[test]
    fn profile_invariant_under_extension() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f9 = f9();
        for _ in 0..60 {
            let deg = rng.gen_range(1..=10);
            let ints: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..3)).collect();
            let f = p3(&ints);
            if f.is_zero() {
                continue;
            }
            let lifted = f.embed_into(&f9).unwrap();
            assert_eq!(
                f.multiplicity_profile().unwrap(),
                lifted.multiplicity_profile().unwrap()
            );
        }
    }

    #[test]
    fn parse_display_roundtrip() {
        let f9 = f9();
        let p = Poly::from_coeffs(&f9, vec![f9.one(), f9.from_int(2), f9.generator()]);
        assert_eq!(p.to_string(), "1,0;2,0;0,1");
        assert_eq!(Poly::parse(&f9, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn compose_shift() {
        // f(t) = t^2+1, f(t+1) = t^2+2t+2
        let f = p3(&[1, 0, 1]);
        assert_eq!(f.shift(&f3().one()), p3(&[2, 2, 1]));
        assert_eq!(
            f.shift(&f3().one()).eval(&f3().zero()),
            f.eval(&f3().one())
        );
    }
}
