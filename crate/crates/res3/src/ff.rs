//! Exact arithmetic in GF(3) and its extensions GF(3^k).
//!
//! An element of GF(3^k) is a dense length-k vector of residues mod 3,
//! reduced modulo a fixed monic irreducible polynomial of degree k over
//! GF(3). Extension degrees up to 12 are supported; when no modulus is
//! given, a deterministic built-in choice is used (the lexicographically
//! smallest monic irreducible, by base-3 value of the coefficient vector).
//! For k = 2 that choice is x^2 + 1, so GF(9) = GF(3)[i] with i^2 = -1 and
//! printed constants involving `i` transfer verbatim.
//!
//! Fields are immutable and cheaply cloneable (shared behind an `Arc`);
//! elements are plain values. The only global state is a synchronized
//! cache of inter-field embeddings.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

/// Errors from field construction and the partial field operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: usize },
    #[error("modulus is reducible over GF(3)")]
    ReducibleModulus,
    #[error("extension degree {0} out of supported range 1..=12")]
    UnsupportedDegree(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    MixedFields,
    #[error("degree {src} does not divide degree {dst}, no embedding exists")]
    NoEmbedding { src: usize, dst: usize },
    #[error("invalid field spec `{0}`")]
    BadSpec(String),
}

// ---------------------------------------------------------------------------
// GF(3)[x] digit-vector helpers (private).
//
// A polynomial over GF(3) is a Vec<u8> of digits in {0,1,2}, constant term
// first, with no trailing zeros (the zero polynomial is the empty vector).
// ---------------------------------------------------------------------------

fn g3_trim(v: &mut Vec<u8>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn g3_sub(a: &[u8], b: &[u8]) -> Vec<u8> {
    let n = a.len().max(b.len());
    let mut out = vec![0u8; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = 3 + a.get(i).copied().unwrap_or(0) - b.get(i).copied().unwrap_or(0);
        *o = x % 3;
    }
    g3_trim(&mut out);
    out
}

fn g3_mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % 3;
        }
    }
    g3_trim(&mut out);
    out
}

/// Remainder of `a` modulo a monic `m`.
fn g3_rem(a: &[u8], m: &[u8]) -> Vec<u8> {
    debug_assert_eq!(*m.last().unwrap(), 1, "modulus must be monic");
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (j, &mj) in m.iter().enumerate() {
                let idx = shift + j;
                r[idx] = (3 + r[idx] - (lead * mj) % 3) % 3;
            }
        }
        r.pop();
        g3_trim(&mut r);
        if r.len() <= dm {
            break;
        }
    }
    r
}

fn g3_gcd(a: &[u8], b: &[u8]) -> Vec<u8> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        // make b monic before reducing
        let inv = if *b.last().unwrap() == 2 { 2 } else { 1 };
        let bm: Vec<u8> = b.iter().map(|&c| (c * inv) % 3).collect();
        let r = g3_rem(&a, &bm);
        a = bm;
        b = r;
    }
    if a.is_empty() {
        return a;
    }
    let inv = if *a.last().unwrap() == 2 { 2 } else { 1 };
    a.iter().map(|&c| (c * inv) % 3).collect()
}

fn g3_mulmod(a: &[u8], b: &[u8], m: &[u8]) -> Vec<u8> {
    g3_rem(&g3_mul(a, b), m)
}

/// x^(3^e) mod m, by repeated cubing.
fn g3_frob_x(e: usize, m: &[u8]) -> Vec<u8> {
    let mut cur = g3_rem(&[0, 1], m); // x
    for _ in 0..e {
        let sq = g3_mulmod(&cur, &cur, m);
        cur = g3_mulmod(&sq, &cur, m);
    }
    cur
}

/// Rabin irreducibility test for a monic polynomial of degree k >= 1 over GF(3).
fn g3_is_irreducible(m: &[u8]) -> bool {
    let k = m.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    // x^(3^k) must equal x mod m
    let frob_k = g3_frob_x(k, m);
    if frob_k != g3_rem(&[0, 1], m) {
        return false;
    }
    // for every prime p | k: gcd(x^(3^(k/p)) - x, m) must be 1
    let mut primes = Vec::new();
    let mut n = k;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    for p in primes {
        let fr = g3_frob_x(k / p, m);
        let diff = g3_sub(&fr, &g3_rem(&[0, 1], m));
        let g = g3_gcd(&diff, m);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree k, ordered by the
/// base-3 value of the low coefficient vector.
fn g3_first_irreducible(k: usize) -> Vec<u8> {
    let bound = 3u64.pow(k as u32);
    for v in 0..bound {
        let mut digits = vec![0u8; k + 1];
        let mut x = v;
        for d in digits.iter_mut().take(k) {
            *d = (x % 3) as u8;
            x /= 3;
        }
        digits[k] = 1;
        if g3_is_irreducible(&digits) {
            return digits;
        }
    }
    unreachable!("irreducibles of every degree exist")
}

// ---------------------------------------------------------------------------
// Field
// ---------------------------------------------------------------------------

#[derive(Debug)]
struct FieldRepr {
    k: usize,
    /// Monic modulus of degree k, constant term first, length k+1.
    /// For k = 1 this is the placeholder `x`.
    modulus: Vec<u8>,
}

/// A finite field GF(3^k), k in 1..=12.
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.k.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec_string())
    }
}

static DEFAULT_MODULI: OnceLock<Mutex<HashMap<usize, Vec<u8>>>> = OnceLock::new();

impl Field {
    /// The prime field GF(3).
    pub fn gf3() -> Field {
        Field(Arc::new(FieldRepr {
            k: 1,
            modulus: vec![0, 1],
        }))
    }

    /// GF(3^k) with the built-in modulus (GF(9) is GF(3)[i]/(i^2+1)).
    pub fn with_degree(k: usize) -> Result<Field, FieldError> {
        if k == 0 || k > 12 {
            return Err(FieldError::UnsupportedDegree(k));
        }
        if k == 1 {
            return Ok(Field::gf3());
        }
        let table = DEFAULT_MODULI.get_or_init(|| Mutex::new(HashMap::new()));
        let modulus = {
            let mut guard = table.lock().unwrap();
            guard
                .entry(k)
                .or_insert_with(|| g3_first_irreducible(k))
                .clone()
        };
        Ok(Field(Arc::new(FieldRepr { k, modulus })))
    }

    /// GF(3^k) with an explicit monic irreducible modulus (constant term first,
    /// length k+1).
    pub fn with_modulus(k: usize, modulus: Vec<u8>) -> Result<Field, FieldError> {
        if k == 0 || k > 12 {
            return Err(FieldError::UnsupportedDegree(k));
        }
        if k == 1 && modulus == vec![0, 1] {
            return Ok(Field::gf3());
        }
        if modulus.len() != k + 1 || modulus.last() != Some(&1) || modulus.iter().any(|&c| c > 2) {
            return Err(FieldError::BadModulus { expected: k });
        }
        if !g3_is_irreducible(&modulus) {
            return Err(FieldError::ReducibleModulus);
        }
        Ok(Field(Arc::new(FieldRepr { k, modulus })))
    }

    /// Parse a field spec: `GF(3)` or `GF(3^k)/c0,c1,...,ck`.
    pub fn parse_spec(s: &str) -> Result<Field, FieldError> {
        let s = s.trim();
        if s == "GF(3)" {
            return Ok(Field::gf3());
        }
        let bad = || FieldError::BadSpec(s.to_string());
        let rest = s.strip_prefix("GF(3^").ok_or_else(bad)?;
        let close = rest.find(')').ok_or_else(bad)?;
        let k: usize = rest[..close].parse().map_err(|_| bad())?;
        let tail = &rest[close + 1..];
        if tail.is_empty() {
            return Field::with_degree(k);
        }
        let tail = tail.strip_prefix('/').ok_or_else(bad)?;
        let digits: Result<Vec<u8>, _> = tail.split(',').map(|p| p.trim().parse::<u8>()).collect();
        let digits = digits.map_err(|_| bad())?;
        Field::with_modulus(k, digits)
    }

    /// Spec string `GF(3)` or `GF(3^k)/c0,...,ck`.
    pub fn spec_string(&self) -> String {
        if self.0.k == 1 {
            "GF(3)".to_string()
        } else {
            let digits: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
            format!("GF(3^{})/{}", self.0.k, digits.join(","))
        }
    }

    pub fn degree(&self) -> usize {
        self.0.k
    }

    /// Field size 3^k.
    pub fn order(&self) -> u64 {
        3u64.pow(self.0.k as u32)
    }

    pub fn modulus_digits(&self) -> &[u8] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            digits: vec![0; self.0.k],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The class of x, a generator of the extension over GF(3) (k >= 2).
    /// For GF(9) with the default modulus this is the square root of -1.
    pub fn generator(&self) -> FieldElement {
        assert!(self.0.k >= 2, "prime field has no extension generator");
        let mut digits = vec![0; self.0.k];
        digits[1] = 1;
        FieldElement {
            field: self.clone(),
            digits,
        }
    }

    /// Canonical image of an integer.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut digits = vec![0; self.0.k];
        digits[0] = n.rem_euclid(3) as u8;
        FieldElement {
            field: self.clone(),
            digits,
        }
    }

    /// Element from a digit vector (length <= k, entries reduced mod 3).
    pub fn from_digits(&self, digits: &[u8]) -> FieldElement {
        assert!(digits.len() <= self.0.k, "digit vector longer than degree");
        let mut d = vec![0; self.0.k];
        for (i, &c) in digits.iter().enumerate() {
            d[i] = c % 3;
        }
        FieldElement {
            field: self.clone(),
            digits: d,
        }
    }

    /// All field elements in lexicographic (base-3 value) order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let k = self.0.k;
        (0..self.order()).map(move |v| {
            let mut digits = vec![0u8; k];
            let mut x = v;
            for d in digits.iter_mut() {
                *d = (x % 3) as u8;
                x /= 3;
            }
            FieldElement {
                field: self.clone(),
                digits,
            }
        })
    }

    /// Parse one element from its comma-separated digit form, e.g. `1,2`.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement, FieldError> {
        let digits: Result<Vec<u8>, _> = s.split(',').map(|p| p.trim().parse::<u8>()).collect();
        let digits = digits.map_err(|_| FieldError::BadSpec(s.to_string()))?;
        if digits.len() > self.0.k || digits.iter().any(|&c| c > 2) {
            return Err(FieldError::BadSpec(s.to_string()));
        }
        Ok(self.from_digits(&digits))
    }
}

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

/// An element of a [`Field`], as a length-k digit vector mod 3.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    digits: Vec<u8>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.digits == other.digits
    }
}
impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.digits.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Elements print as comma-separated base-3 digit vectors, e.g. `1,2` for 1+2i.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    pub fn is_one(&self) -> bool {
        self.digits[0] == 1 && self.digits[1..].iter().all(|&d| d == 0)
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "arithmetic on elements of different fields (use embed)"
        );
    }

    /// Base-3 value of the digit vector; the lexicographic tie-break key.
    pub fn lex_value(&self) -> u64 {
        self.digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * 3 + d as u64)
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse.
    pub fn inverse(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        // a^(q-2) in a field of order q
        Ok(self.pow(self.field.order() - 2))
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.assert_same_field(other);
        Ok(self * &other.inverse()?)
    }

    /// The Frobenius endomorphism a -> a^3 (an automorphism here).
    pub fn frobenius(&self) -> FieldElement {
        self.pow(3)
    }

    /// The inverse of Frobenius; every element of GF(3^k) has a unique cube root.
    pub fn cube_root(&self) -> FieldElement {
        let k = self.field.degree() as u32;
        if k == 1 {
            return self.clone(); // a^3 = a on GF(3)
        }
        self.pow(3u64.pow(k - 1))
    }

    /// True iff the element is a square (0 counts as a square).
    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        self.pow((self.field.order() - 1) / 2).is_one()
    }

    /// Square root when one exists, choosing the root with the
    /// lexicographically smaller digit vector.
    pub fn sqrt(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if !self.is_square() {
            return None;
        }
        let q = self.field.order();
        let r = if q % 4 == 3 {
            self.pow((q + 1) / 4)
        } else {
            self.tonelli_shanks()
        };
        debug_assert_eq!(&(&r * &r), self);
        let neg = -&r;
        Some(if r.lex_value() <= neg.lex_value() { r } else { neg })
    }

    fn tonelli_shanks(&self) -> FieldElement {
        let q = self.field.order();
        // q - 1 = 2^s * m with m odd
        let mut m = q - 1;
        let mut s = 0u32;
        while m % 2 == 0 {
            m /= 2;
            s += 1;
        }
        // deterministic non-residue: first element in lex order that is not a square
        let z = self
            .field
            .elements()
            .find(|e| !e.is_zero() && !e.is_square())
            .expect("finite field has non-squares");
        let mut c = z.pow(m);
        let mut t = self.pow(m);
        let mut r = self.pow((m + 1) / 2);
        let mut e = s;
        while !t.is_one() {
            // smallest 0 < j < e with t^(2^j) = 1
            let mut j = 0;
            let mut probe = t.clone();
            while !probe.is_one() {
                probe = &probe * &probe;
                j += 1;
            }
            let b = c.pow(1 << (e - j - 1));
            r = &r * &b;
            c = &b * &b;
            t = &t * &c;
            e = j;
        }
        r
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$impl_fn(rhs)
            }
        }
        impl std::ops::$trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$impl_fn(&rhs)
            }
        }
        impl std::ops::$trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$impl_fn(rhs)
            }
        }
    };
}

impl FieldElement {
    fn add_impl(&self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let digits = self
            .digits
            .iter()
            .zip(&rhs.digits)
            .map(|(&a, &b)| (a + b) % 3)
            .collect();
        FieldElement {
            field: self.field.clone(),
            digits,
        }
    }

    fn sub_impl(&self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let digits = self
            .digits
            .iter()
            .zip(&rhs.digits)
            .map(|(&a, &b)| (3 + a - b) % 3)
            .collect();
        FieldElement {
            field: self.field.clone(),
            digits,
        }
    }

    fn mul_impl(&self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let prod = g3_mul(&self.digits, &rhs.digits);
        let red = g3_rem(&prod, self.field.modulus_digits());
        let mut digits = vec![0u8; self.field.degree()];
        digits[..red.len()].copy_from_slice(&red);
        FieldElement {
            field: self.field.clone(),
            digits,
        }
    }

    fn div_impl(&self, rhs: &FieldElement) -> FieldElement {
        self.try_div(rhs).expect("division by zero field element")
    }
}

impl_binop!(Add, add, add_impl);
impl_binop!(Sub, sub, sub_impl);
impl_binop!(Mul, mul, mul_impl);
impl_binop!(Div, div, div_impl);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let digits = self.digits.iter().map(|&d| (3 - d) % 3).collect();
        FieldElement {
            field: self.field.clone(),
            digits,
        }
    }
}
impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Embeddings
// ---------------------------------------------------------------------------

type EmbedKey = (usize, Vec<u8>, usize, Vec<u8>);

static EMBED_CACHE: OnceLock<Mutex<HashMap<EmbedKey, Vec<u8>>>> = OnceLock::new();

/// Ring-homomorphic embedding of `a` into `target`, cached per field pair.
///
/// The image of the source generator is the lexicographically smallest root
/// of the source modulus in the target field, so repeated runs embed
/// identically.
pub fn embed(a: &FieldElement, target: &Field) -> Result<FieldElement, FieldError> {
    let src = a.field();
    if src == target {
        return Ok(a.clone());
    }
    if target.degree() % src.degree() != 0 {
        return Err(FieldError::NoEmbedding {
            src: src.degree(),
            dst: target.degree(),
        });
    }
    if src.degree() == 1 {
        // prime field embeds canonically
        return Ok(target.from_int(a.digits()[0] as i64));
    }
    let key: EmbedKey = (
        src.degree(),
        src.modulus_digits().to_vec(),
        target.degree(),
        target.modulus_digits().to_vec(),
    );
    let cache = EMBED_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let image_digits = {
        let guard = cache.lock().unwrap();
        guard.get(&key).cloned()
    };
    let image_digits = match image_digits {
        Some(d) => d,
        None => {
            let root = find_modulus_root(src, target)
                .expect("source modulus always has a root in a compatible extension");
            let digits = root.digits().to_vec();
            cache.lock().unwrap().insert(key, digits.clone());
            digits
        }
    };
    let image = target.from_digits(&image_digits);
    // Horner evaluation of the digit vector at the generator image
    let mut acc = target.zero();
    for &d in a.digits().iter().rev() {
        acc = &(&acc * &image) + &target.from_int(d as i64);
    }
    Ok(acc)
}

fn find_modulus_root(src: &Field, target: &Field) -> Option<FieldElement> {
    let coeffs: Vec<FieldElement> = src
        .modulus_digits()
        .iter()
        .map(|&c| target.from_int(c as i64))
        .collect();
    target.elements().find(|x| {
        let mut acc = target.zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc.is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf9() -> Field {
        Field::with_degree(2).unwrap()
    }

    #[test]
    fn default_moduli_are_the_expected_ones() {
        assert_eq!(Field::gf3().modulus_digits(), &[0, 1]);
        assert_eq!(gf9().modulus_digits(), &[1, 0, 1]); // x^2 + 1
        assert_eq!(Field::with_degree(3).unwrap().modulus_digits(), &[1, 2, 0, 1]); // x^3 + 2x + 1
        // every table entry must be irreducible and lexicographically first
        for k in 2..=12 {
            let f = Field::with_degree(k).unwrap();
            assert!(g3_is_irreducible(f.modulus_digits()), "k={k}");
            assert_eq!(f.modulus_digits(), g3_first_irreducible(k).as_slice());
        }
    }

    #[test]
    fn explicit_modulus_validation() {
        // x^3 - x - 1 = x^3 + 2x + 2 is irreducible
        assert!(Field::with_modulus(3, vec![2, 2, 0, 1]).is_ok());
        // x^2 + 2x + 1 = (x+1)^2 is reducible
        assert_eq!(
            Field::with_modulus(2, vec![1, 2, 1]),
            Err(FieldError::ReducibleModulus)
        );
        // non-monic
        assert!(matches!(
            Field::with_modulus(2, vec![1, 0, 2]),
            Err(FieldError::BadModulus { .. })
        ));
        assert_eq!(
            Field::with_degree(13),
            Err(FieldError::UnsupportedDegree(13))
        );
    }

    #[test]
    fn gf9_generator_is_i() {
        let f = gf9();
        let i = f.generator();
        // i^2 = -1 = 2
        assert_eq!(&i * &i, f.from_int(2));
        // (1+i)(1-i) = 1 - i^2 = 2
        let a = &f.one() + &i;
        let b = &f.one() - &i;
        assert_eq!(&a * &b, f.from_int(2));
    }

    #[test]
    fn gf3_arith() {
        let f = Field::gf3();
        assert_eq!(&f.from_int(2) + &f.from_int(2), f.one());
        assert_eq!(&f.from_int(2) * &f.from_int(2), f.one());
        assert!(f.from_int(2).try_div(&f.zero()).is_err());
    }

    #[test]
    fn division_roundtrip() {
        let f = gf9();
        for a in f.elements() {
            for b in f.elements() {
                if b.is_zero() {
                    continue;
                }
                let q = a.try_div(&b).unwrap();
                assert_eq!(&q * &b, a);
            }
        }
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn mixed_field_arith_panics() {
        let _ = &Field::gf3().one() + &gf9().one();
    }

    #[test]
    fn sqrt_examples() {
        let f9 = gf9();
        let i = f9.generator();
        // sqrt(0) = 0
        assert_eq!(f9.zero().sqrt().unwrap(), f9.zero());
        // sqrt(i) exists: (1-i)^2 = 1 - 2i + i^2 = i in characteristic 3
        let r = i.sqrt().expect("i is a square in GF(9)");
        assert_eq!(&r * &r, i);
        let one_minus_i = &f9.one() - &i;
        assert!(r == one_minus_i || r == -&one_minus_i);
        // sqrt(2) does not exist in GF(3)
        assert!(Field::gf3().from_int(2).sqrt().is_none());
        // determinism: lexicographically smaller root
        let neg = -&r;
        assert!(r.lex_value() <= neg.lex_value());
    }

    #[test]
    fn square_counts() {
        // exactly (q+1)/2 squares, counting 0
        for k in 1..=4 {
            let f = Field::with_degree(k).unwrap();
            let squares = f.elements().filter(|e| e.is_square()).count() as u64;
            assert_eq!(squares, (f.order() + 1) / 2, "k={k}");
        }
    }

    #[test]
    fn sqrt_total_on_squares() {
        for k in 1..=4 {
            let f = Field::with_degree(k).unwrap();
            for a in f.elements() {
                match a.sqrt() {
                    Some(r) => assert_eq!(&r * &r, a),
                    None => assert!(!a.is_square()),
                }
            }
        }
    }

    #[test]
    fn frobenius_and_cube_root() {
        let f9 = gf9();
        let i = f9.generator();
        // i^3 = -i
        assert_eq!(i.frobenius(), -&i);
        assert_eq!((-&i).cube_root(), i);
        assert_eq!(f9.one().cube_root(), f9.one());
        for k in 1..=4 {
            let f = Field::with_degree(k).unwrap();
            for a in f.elements() {
                assert_eq!(a.frobenius().cube_root(), a);
                let mut it = a.clone();
                for _ in 0..k {
                    it = it.frobenius();
                }
                assert_eq!(it, a, "frobenius^k is the identity");
            }
        }
    }

    #[test]
    fn embed_respects_arithmetic() {
        for (ks, kt) in [(1usize, 2usize), (2, 4), (1, 3)] {
            let s = Field::with_degree(ks).unwrap();
            let t = Field::with_degree(kt).unwrap();
            for a in s.elements() {
                for b in s.elements() {
                    let ea = embed(&a, &t).unwrap();
                    let eb = embed(&b, &t).unwrap();
                    assert_eq!(embed(&(&a + &b), &t).unwrap(), &ea + &eb);
                    assert_eq!(embed(&(&a - &b), &t).unwrap(), &ea - &eb);
                    assert_eq!(embed(&(&a * &b), &t).unwrap(), &ea * &eb);
                    if !b.is_zero() {
                        assert_eq!(
                            embed(&a.try_div(&b).unwrap(), &t).unwrap(),
                            ea.try_div(&eb).unwrap()
                        );
                    }
                }
            }
            // injectivity on the full (small) field
            let mut images: Vec<u64> = s
                .elements()
                .map(|a| embed(&a, &t).unwrap().lex_value())
                .collect();
            images.sort_unstable();
            images.dedup();
            assert_eq!(images.len() as u64, s.order());
        }
    }

    #[test]
    fn embed_examples() {
        let f3 = Field::gf3();
        let f9 = gf9();
        let f27 = Field::with_degree(3).unwrap();
        let f81 = Field::with_degree(4).unwrap();
        assert_eq!(embed(&f3.from_int(2), &f9).unwrap(), f9.from_int(2));
        // image of i in GF(81) squares to -1
        let i81 = embed(&f9.generator(), &f81).unwrap();
        assert_eq!(&i81 * &i81, f81.from_int(2));
        assert_eq!(
            embed(&f9.generator(), &f27),
            Err(FieldError::NoEmbedding { src: 2, dst: 3 })
        );
    }

    #[test]
    fn spec_string_roundtrip() {
        for k in 1..=5 {
            let f = Field::with_degree(k).unwrap();
            assert_eq!(Field::parse_spec(&f.spec_string()).unwrap(), f);
        }
        let f = Field::parse_spec("GF(3^2)/1,0,1").unwrap();
        assert_eq!(f, Field::with_degree(2).unwrap());
        assert!(Field::parse_spec("GF(4)").is_err());
    }

    #[test]
    fn element_parse_display_roundtrip() {
        let f = gf9();
        for a in f.elements() {
            assert_eq!(f.parse_element(&a.to_string()).unwrap(), a);
        }
    }
}
