//! Weierstrass models of rational elliptic surfaces in characteristic 3.
//!
//! A model is `y^2 = x^3 + b2*x^2 - b4*x + b6` with b2, b4, b6 in GF(3^k)[t]
//! of degree at most 2, 4, 6. Its discriminant is the degree <= 12
//! polynomial
//!
//! ```text
//! D = -b2^2 (b2 b6 - b4^2) + b4^3
//! ```
//!
//! whose root multiplicities are the local delta invariants of the singular
//! fibres. The module also provides the coordinate and base transformations
//! used to bring discriminants into the two degree-12 normal forms for
//! purely multiplicative configurations, and the recognizers for those
//! forms.

use std::fmt;

use thiserror::Error;

use crate::ff::{Field, FieldElement};
use crate::upoly::{Poly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("coefficient degree bound exceeded: deg b{which} = {got}, bound {bound}")]
    DegreeBound { which: u32, got: usize, bound: usize },
    #[error("discriminant vanishes identically, the fibration is not elliptic")]
    ZeroDiscriminant,
    #[error("coefficients belong to different fields")]
    MixedFields,
    #[error("base transformation matrix is singular")]
    SingularMatrix,
    #[error("rescaling unit is zero")]
    ZeroUnit,
    #[error("invalid model file: {0}")]
    BadModelFile(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A Weierstrass model `y^2 = x^3 + b2 x^2 - b4 x + b6` with the degree
/// bounds deg b_i <= i and nonzero discriminant.
#[derive(Clone, PartialEq, Eq)]
pub struct WeierstrassModel {
    b2: Poly,
    b4: Poly,
    b6: Poly,
}

impl fmt::Debug for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[b2 = {}, b4 = {}, b6 = {}]",
            self.b2.to_pretty(),
            self.b4.to_pretty(),
            self.b6.to_pretty()
        )
    }
}

impl WeierstrassModel {
    pub fn new(b2: Poly, b4: Poly, b6: Poly) -> Result<WeierstrassModel, SurfaceError> {
        if b2.field() != b4.field() || b4.field() != b6.field() {
            return Err(SurfaceError::MixedFields);
        }
        for (which, p, bound) in [(2u32, &b2, 2usize), (4, &b4, 4), (6, &b6, 6)] {
            if let Some(d) = p.degree() {
                if d > bound {
                    return Err(SurfaceError::DegreeBound {
                        which,
                        got: d,
                        bound,
                    });
                }
            }
        }
        let m = WeierstrassModel { b2, b4, b6 };
        if m.discriminant().is_zero() {
            return Err(SurfaceError::ZeroDiscriminant);
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        self.b2.field()
    }

    pub fn b2(&self) -> &Poly {
        &self.b2
    }
    pub fn b4(&self) -> &Poly {
        &self.b4
    }
    pub fn b6(&self) -> &Poly {
        &self.b6
    }

    /// The discriminant `-b2^2 (b2 b6 - b4^2) + b4^3`, of degree <= 12.
    pub fn discriminant(&self) -> Poly {
        let b2sq = &self.b2 * &self.b2;
        let inner = &(&self.b2 * &self.b6) - &(&self.b4 * &self.b4);
        let b4cu = &(&self.b4 * &self.b4) * &self.b4;
        &b4cu - &(&b2sq * &inner)
    }

    /// Independent discriminant route through the invariants of the general
    /// form `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` with
    /// (a1, a2, a3, a4, a6) = (0, b2, 0, -b4, b6); all integer constants are
    /// mapped into the field. Must agree with [`Self::discriminant`].
    pub fn discriminant_oracle(&self) -> Poly {
        let f = self.field();
        let k = |n: i64| Poly::constant(f.from_int(n));
        let a1 = Poly::zero(f);
        let a2 = self.b2.clone();
        let a3 = Poly::zero(f);
        let a4 = -&self.b4;
        let a6 = self.b6.clone();

        let c2 = &(&a1 * &a1) + &(&k(4) * &a2);
        let c4 = &(&k(2) * &a4) + &(&a1 * &a3);
        let c6 = &(&a3 * &a3) + &(&k(4) * &a6);
        let c8 = &(&(&(&(&a1 * &a1) * &a6) + &(&(&k(4) * &a2) * &a6)) - &(&(&a1 * &a3) * &a4))
            + &(&(&(&a2 * &a3) * &a3) - &(&a4 * &a4));

        let t1 = &(&(&c2 * &c2) * &c8) * &k(-1);
        let t2 = &(&(&c4 * &c4) * &c4) * &k(-8);
        let t3 = &(&c6 * &c6) * &k(-27);
        let t4 = &(&(&c2 * &c4) * &c6) * &k(9);
        &(&(&t1 + &t2) + &t3) + &t4
    }

    /// Rescaling (b2, b4, b6) -> (u^2 b2, u^4 b4, u^6 b6). Scales the
    /// discriminant by u^12 and never changes the fibre configuration.
    pub fn rescale(&self, u: &FieldElement) -> Result<WeierstrassModel, SurfaceError> {
        if u.is_zero() {
            return Err(SurfaceError::ZeroUnit);
        }
        let u2 = u * u;
        let u4 = &u2 * &u2;
        let u6 = &u4 * &u2;
        WeierstrassModel::new(
            self.b2.scale(&u2),
            self.b4.scale(&u4),
            self.b6.scale(&u6),
        )
    }

    /// Fractional linear substitution t <- (a t + b) / (c t + d) on the base,
    /// with each b_i homogenized of weight i:
    /// `b_i(t) -> (c t + d)^i * b_i((a t + b)/(c t + d))`.
    pub fn moebius_transform(
        &self,
        g: &[[FieldElement; 2]; 2],
    ) -> Result<WeierstrassModel, SurfaceError> {
        let [[a, b], [c, d]] = g;
        let det = &(a * d) - &(b * c);
        if det.is_zero() {
            return Err(SurfaceError::SingularMatrix);
        }
        let f = self.field();
        let num = Poly::from_coeffs(f, vec![b.clone(), a.clone()]); // a t + b
        let den = Poly::from_coeffs(f, vec![d.clone(), c.clone()]); // c t + d
        let transform = |p: &Poly, weight: usize| -> Poly {
            let mut acc = Poly::zero(f);
            for (j, coeff) in p.coeffs().iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let term = &num.pow(j as u32) * &den.pow((weight - j) as u32);
                acc = &acc + &term.scale(coeff);
            }
            acc
        };
        WeierstrassModel::new(
            transform(&self.b2, 2),
            transform(&self.b4, 4),
            transform(&self.b6, 6),
        )
    }

    /// The model in the chart at infinity: `b_i~(s) = s^i * b_i(1/s)`.
    /// The vanishing order of the flipped discriminant at s = 0 is
    /// 12 - deg D, the delta invariant of the fibre over t = infinity.
    pub fn flip_to_infinity(&self) -> WeierstrassModel {
        let flip = |p: &Poly, weight: usize| -> Poly {
            let f = p.field();
            let mut coeffs = vec![f.zero(); weight + 1];
            for (j, c) in p.coeffs().iter().enumerate() {
                coeffs[weight - j] = c.clone();
            }
            Poly::from_coeffs(f, coeffs)
        };
        WeierstrassModel {
            b2: flip(&self.b2, 2),
            b4: flip(&self.b4, 4),
            b6: flip(&self.b6, 6),
        }
    }

    /// Substitute t <- t + c (moves the point c to the origin).
    pub fn shift_base(&self, c: &FieldElement) -> WeierstrassModel {
        WeierstrassModel {
            b2: self.b2.shift(c),
            b4: self.b4.shift(c),
            b6: self.b6.shift(c),
        }
    }

    /// Map the model coefficients into a compatible extension field.
    pub fn embed_into(&self, target: &Field) -> Result<WeierstrassModel, SurfaceError> {
        Ok(WeierstrassModel {
            b2: self.b2.embed_into(target).map_err(PolyError::from)?,
            b4: self.b4.embed_into(target).map_err(PolyError::from)?,
            b6: self.b6.embed_into(target).map_err(PolyError::from)?,
        })
    }

    /// Serialize as a model file record.
    pub fn to_model_file(&self) -> String {
        format!(
            "field={}\nb2={}\nb4={}\nb6={}\n",
            self.field().spec_string(),
            self.b2,
            self.b4,
            self.b6
        )
    }

    /// Parse the model file format: `field=...`, `b2=...`, `b4=...`, `b6=...`
    /// lines (order free, `#` comments allowed), polynomials in the
    /// digit-vector serialization.
    pub fn parse_model_file(text: &str) -> Result<WeierstrassModel, SurfaceError> {
        let mut field: Option<Field> = None;
        let mut parts: std::collections::HashMap<String, String> = Default::default();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| SurfaceError::BadModelFile(format!("bad line `{line}`")))?;
            let key = key.trim();
            let value = value.trim().to_string();
            match key {
                "field" => {
                    field = Some(
                        Field::parse_spec(&value)
                            .map_err(|e| SurfaceError::BadModelFile(e.to_string()))?,
                    )
                }
                "b2" | "b4" | "b6" => {
                    parts.insert(key.to_string(), value);
                }
                _ => return Err(SurfaceError::BadModelFile(format!("unknown key `{key}`"))),
            }
        }
        let field = field.ok_or_else(|| SurfaceError::BadModelFile("missing field".into()))?;
        let get = |k: &str| -> Result<Poly, SurfaceError> {
            let s = parts
                .get(k)
                .ok_or_else(|| SurfaceError::BadModelFile(format!("missing {k}")))?;
            Poly::parse(&field, s).map_err(|e| SurfaceError::BadModelFile(e.to_string()))
        };
        WeierstrassModel::new(get("b2")?, get("b4")?, get("b6")?)
    }
}

// ---------------------------------------------------------------------------
// Additive shape and the three additive discriminant patterns
// ---------------------------------------------------------------------------

/// The additive normal shape `y^2 = x^3 + t c1 x^2 + t c3 x + t c5`
/// (deg c_i <= i), i.e. b2 = t c1, b4 = -t c3, b6 = t c5.
#[derive(Debug, Clone)]
pub struct AdditiveShape {
    pub c1: Poly,
    pub c3: Poly,
    pub c5: Poly,
}

impl AdditiveShape {
    pub fn to_model(&self) -> Result<WeierstrassModel, SurfaceError> {
        let f = self.c1.field();
        let t = Poly::t(f);
        WeierstrassModel::new(&t * &self.c1, -&(&t * &self.c3), &t * &self.c5)
    }
}

/// Which of the three additive discriminant patterns a model in additive
/// shape falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdditiveDeltaKind {
    /// b2 has two distinct roots (0 and one more); the t^11 coefficient of D
    /// vanishes.
    DistinctRoots,
    /// b2 has a double root at 0; the t^4 and t^5 coefficients of D vanish.
    DoubleRoot,
    /// b2 is identically zero; D = b4^3.
    B2Zero,
    /// The model is not in additive shape at t = 0.
    NotAdditiveNormal,
}

/// Classify the additive-shape discriminant pattern of a model whose worst
/// fibre sits at t = 0 (t | b2 or b2 = 0, t | b4, t | b6), verifying the
/// vanishing-coefficient constraints on the actual discriminant.
pub fn recognize_additive_delta(m: &WeierstrassModel) -> AdditiveDeltaKind {
    let vanishes_at_zero = |p: &Poly| p.is_zero() || p.ord_at_zero().unwrap() >= 1;
    if !vanishes_at_zero(m.b2()) || !vanishes_at_zero(m.b4()) || !vanishes_at_zero(m.b6()) {
        return AdditiveDeltaKind::NotAdditiveNormal;
    }
    let delta = m.discriminant();
    if m.b2().is_zero() {
        let b4cu = &(m.b4() * m.b4()) * m.b4();
        debug_assert_eq!(delta, b4cu);
        return AdditiveDeltaKind::B2Zero;
    }
    // b2 = t (e1 t + e0); e0 != 0 means the second root of b2 is distinct
    let e0 = m.b2().coeff(1);
    if !e0.is_zero() {
        debug_assert!(delta.coeff(11).is_zero(), "t^11 must vanish");
        AdditiveDeltaKind::DistinctRoots
    } else {
        debug_assert!(delta.coeff(4).is_zero(), "t^4 must vanish");
        debug_assert!(delta.coeff(5).is_zero(), "t^5 must vanish");
        AdditiveDeltaKind::DoubleRoot
    }
}

// ---------------------------------------------------------------------------
// Degree-12 normal forms for purely multiplicative configurations
// ---------------------------------------------------------------------------

/// Normal form of the discriminant when b2 has distinct roots (moved to 0
/// and infinity):
///
/// ```text
/// D = t^12 + l t^10 + t^3 P6(t) + m t^2 + n,   m^3 = n^2 l^3 != 0
/// ```
///
/// The t^11 and t^1 coefficients vanish; P6 has degree <= 6.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarForm {
    pub l: FieldElement,
    pub m: FieldElement,
    pub n: FieldElement,
    pub p6: Poly,
}

/// Normal form when b2 has a double root (moved to infinity):
///
/// ```text
/// D = t^12 + l t^9 + m t^8 - n t^7 + P6(t),   n^3 = l m^3 != 0
/// ```
///
/// The t^11 and t^10 coefficients vanish; P6 has degree <= 6.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleRootForm {
    pub l: FieldElement,
    pub m: FieldElement,
    pub n: FieldElement,
    pub p6: Poly,
}

/// Strictness toggle for [`recognize_star_form_with`]: `Strict` enforces the
/// vanishing t coefficient that the derivation of the form produces;
/// `AllowTCoeff` tolerates a nonzero t coefficient (used to triage printed
/// witnesses that violate it).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarStrictness {
    Strict,
    AllowTCoeff,
}

pub fn recognize_star_form(delta: &Poly) -> Option<StarForm> {
    recognize_star_form_with(delta, StarStrictness::Strict)
}

pub fn recognize_star_form_with(delta: &Poly, strict: StarStrictness) -> Option<StarForm> {
    if delta.degree() != Some(12) {
        return None;
    }
    let d = delta.monic();
    if !d.coeff(11).is_zero() {
        return None;
    }
    if strict == StarStrictness::Strict && !d.coeff(1).is_zero() {
        return None;
    }
    let l = d.coeff(10);
    let m = d.coeff(2);
    let n = d.coeff(0);
    if l.is_zero() || m.is_zero() || n.is_zero() {
        return None;
    }
    let m3 = &(&m * &m) * &m;
    let n2l3 = &(&n * &n) * &(&(&l * &l) * &l);
    if m3 != n2l3 {
        return None;
    }
    let f = d.field().clone();
    let p6 = Poly::from_coeffs(&f, (3..=9).map(|i| d.coeff(i)).collect());
    Some(StarForm { l, m, n, p6 })
}

pub fn recognize_doubleroot_form(delta: &Poly) -> Option<DoubleRootForm> {
    if delta.degree() != Some(12) {
        return None;
    }
    let d = delta.monic();
    if !d.coeff(11).is_zero() || !d.coeff(10).is_zero() {
        return None;
    }
    let l = d.coeff(9);
    let m = d.coeff(8);
    let n = -&d.coeff(7);
    if l.is_zero() || m.is_zero() || n.is_zero() {
        return None;
    }
    let n3 = &(&n * &n) * &n;
    let lm3 = &l * &(&(&m * &m) * &m);
    if n3 != lm3 {
        return None;
    }
    let f = d.field().clone();
    let p6 = Poly::from_coeffs(&f, (0..=6).map(|i| d.coeff(i)).collect());
    Some(DoubleRootForm { l, m, n, p6 })
}

impl StarForm {
    /// The polynomial t^12 + l t^10 + t^3 P6 + m t^2 + n.
    pub fn to_poly(&self) -> Poly {
        let f = self.l.field().clone();
        let mut coeffs = vec![f.zero(); 13];
        coeffs[12] = f.one();
        coeffs[10] = self.l.clone();
        for i in 0..=6 {
            coeffs[3 + i] = &coeffs[3 + i] + &self.p6.coeff(i);
        }
        coeffs[2] = &coeffs[2] + &self.m;
        coeffs[0] = &coeffs[0] + &self.n;
        Poly::from_coeffs(&f, coeffs)
    }

    /// Check m^3 = n^2 l^3 != 0.
    pub fn constraint_holds(&self) -> bool {
        if self.l.is_zero() || self.m.is_zero() || self.n.is_zero() {
            return false;
        }
        let m3 = &(&self.m * &self.m) * &self.m;
        let n2l3 = &(&self.n * &self.n) * &(&(&self.l * &self.l) * &self.l);
        m3 == n2l3
    }
}

impl DoubleRootForm {
    /// The polynomial t^12 + l t^9 + m t^8 - n t^7 + P6.
    pub fn to_poly(&self) -> Poly {
        let f = self.l.field().clone();
        let mut coeffs = vec![f.zero(); 13];
        coeffs[12] = f.one();
        coeffs[9] = self.l.clone();
        coeffs[8] = self.m.clone();
        coeffs[7] = -&self.n;
        for i in 0..=6 {
            coeffs[i] = &coeffs[i] + &self.p6.coeff(i);
        }
        Poly::from_coeffs(&f, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f3() -> Field {
        Field::gf3()
    }

    fn p3(ints: &[i64]) -> Poly {
        Poly::from_ints(&f3(), ints)
    }

    fn random_model(field: &Field, rng: &mut ChaCha8Rng) -> WeierstrassModel {
        loop {
            let mut rand_poly = |deg: usize, rng: &mut ChaCha8Rng| {
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
                Poly::from_coeffs(field, coeffs)
            };
            let b2 = rand_poly(2, rng);
            let b4 = rand_poly(4, rng);
            let b6 = rand_poly(6, rng);
            if let Ok(m) = WeierstrassModel::new(b2, b4, b6) {
                return m;
            }
        }
    }

    #[test]
    fn discriminant_examples() {
        // constant model b2=1, b4=0, b6=1: D = -1 = 2
        let m = WeierstrassModel::new(p3(&[1]), p3(&[]), p3(&[1])).unwrap();
        assert_eq!(m.discriminant(), p3(&[2]));
        assert_eq!(m.discriminant_oracle(), p3(&[2]));

        // b2=t^2, b4=-t(t+1), b6=t(t+2): D = -t^3
        let m = WeierstrassModel::new(p3(&[0, 0, 1]), -&p3(&[0, 1, 1]), p3(&[0, 2, 1])).unwrap();
        assert_eq!(-&m.discriminant(), p3(&[0, 0, 0, 1]));
        assert_eq!(m.discriminant(), m.discriminant_oracle());

        // degenerate: b2=t, b4=b6=0 has D = 0
        assert_eq!(
            WeierstrassModel::new(p3(&[0, 1]), p3(&[]), p3(&[])),
            Err(SurfaceError::ZeroDiscriminant)
        );
    }

    #[test]
    fn degree_bounds_enforced() {
        assert!(matches!(
            WeierstrassModel::new(p3(&[0, 0, 0, 1]), p3(&[]), p3(&[1])),
            Err(SurfaceError::DegreeBound { which: 2, .. })
        ));
    }

    #[test]
    fn oracle_matches_on_random_models() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for k in [1usize, 2, 3] {
            let field = Field::with_degree(k).unwrap();
            for _ in 0..200 {
                let m = random_model(&field, &mut rng);
                assert_eq!(m.discriminant(), m.discriminant_oracle());
            }
        }
    }

    #[test]
    fn rescale_examples() {
        let m = WeierstrassModel::new(p3(&[0, 0, 1]), -&p3(&[0, 1, 1]), p3(&[0, 2, 1])).unwrap();
        // u = 1 and u = -1 leave the model unchanged
        assert_eq!(m.rescale(&f3().one()).unwrap(), m);
        assert_eq!(m.rescale(&f3().from_int(-1)).unwrap(), m);
        assert_eq!(m.rescale(&f3().zero()), Err(SurfaceError::ZeroUnit));
        // u = i over GF(9): D -> i^12 D = D
        let f9 = Field::with_degree(2).unwrap();
        let m9 = m.embed_into(&f9).unwrap();
        let scaled = m9.rescale(&f9.generator()).unwrap();
        assert_eq!(scaled.discriminant(), m9.discriminant());
    }

    #[test]
    fn rescale_preserves_profile() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f9 = Field::with_degree(2).unwrap();
        for _ in 0..25 {
            let m = random_model(&f9, &mut rng);
            for u in f9.elements().filter(|u| !u.is_zero()) {
                let s = m.rescale(&u).unwrap();
                assert_eq!(
                    s.discriminant().multiplicity_profile().unwrap(),
                    m.discriminant().multiplicity_profile().unwrap()
                );
            }
        }
    }

    #[test]
    fn moebius_identity_and_shift() {
        let m = WeierstrassModel::new(p3(&[0, 0, 1]), -&p3(&[0, 1, 1]), p3(&[0, 2, 1])).unwrap();
        let one = f3().one();
        let zero = f3().zero();
        let id = [[one.clone(), zero.clone()], [zero.clone(), one.clone()]];
        assert_eq!(m.moebius_transform(&id).unwrap(), m);

        // t -> t + 1 moves the fibre over 1 to 0
        let shift = [[one.clone(), one.clone()], [zero.clone(), one.clone()]];
        let shifted = m.moebius_transform(&shift).unwrap();
        assert_eq!(
            shifted.discriminant().eval(&zero),
            m.discriminant().eval(&one)
        );

        let sing = [[one.clone(), one.clone()], [one.clone(), one.clone()]];
        assert_eq!(
            m.moebius_transform(&sing),
            Err(SurfaceError::SingularMatrix)
        );
    }

    #[test]
    fn moebius_preserves_profile() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let f = f3();
        for _ in 0..40 {
            let m = random_model(&f, &mut rng);
            let g = [[f.one(), f.one()], [f.zero(), f.one()]];
            let mt = m.moebius_transform(&g).unwrap();
            assert_eq!(
                mt.discriminant().multiplicity_profile().unwrap(),
                m.discriminant().multiplicity_profile().unwrap()
            );
        }
    }

    #[test]
    fn flip_involution_and_infinity_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let m = random_model(&f3(), &mut rng);
            let flipped = m.flip_to_infinity();
            assert_eq!(flipped.flip_to_infinity(), m, "flip twice is identity");
            let d = m.discriminant();
            let dtilde = flipped.discriminant();
            let ord_inf = dtilde.ord_at_zero().unwrap();
            assert_eq!(ord_inf + d.degree().unwrap(), 12);
        }
    }

    #[test]
    fn flip_on_low_degree_discriminant() {
        // b2=t^2, b4=-t(t+1), b6=t(t+2) has deg D = 3, so order 9 at infinity
        let m = WeierstrassModel::new(p3(&[0, 0, 1]), -&p3(&[0, 1, 1]), p3(&[0, 2, 1])).unwrap();
        let dtilde = m.flip_to_infinity().discriminant();
        assert_eq!(dtilde.ord_at_zero(), Some(9));
    }

    #[test]
    fn star_form_examples() {
        // t^12+t^10+t^2+1: l = m = n = 1, P6 = 0
        let d = p3(&[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1]);
        let f = recognize_star_form(&d).expect("in star form");
        assert!(f.l.is_one() && f.m.is_one() && f.n.is_one());
        assert!(f.p6.is_zero());
        assert_eq!(f.to_poly(), d);

        // t^12 alone is rejected (m = n = 0)
        assert!(recognize_star_form(&Poly::monomial(f3().one(), 12)).is_none());

        // the strict reading rejects a nonzero t coefficient
        let d1 = p3(&[1, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1]);
        assert!(recognize_star_form(&d1).is_none());
        assert!(recognize_star_form_with(&d1, StarStrictness::AllowTCoeff).is_some());
    }

    #[test]
    fn doubleroot_form_examples() {
        // t^12+t^9+t^8-t^7+1: l = m = n = 1
        let d = p3(&[1, 0, 0, 0, 0, 0, 0, -1, 1, 1, 0, 0, 1]);
        let f = recognize_doubleroot_form(&d).expect("in double-root form");
        assert!(f.l.is_one() && f.m.is_one() && f.n.is_one());
        assert_eq!(f.to_poly(), d);
        // t^12+t^9 rejected (m = 0)
        assert!(recognize_doubleroot_form(&p3(&[0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1])).is_none());
        // t^12+t^11 rejected (t^11 nonzero)
        assert!(recognize_doubleroot_form(&p3(&[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1])).is_none());
    }

    #[test]
    fn additive_delta_patterns() {
        // b2 = 0: D = b4^3
        let m = WeierstrassModel::new(p3(&[]), p3(&[0, 1]), p3(&[0, 1])).unwrap();
        assert_eq!(recognize_additive_delta(&m), AdditiveDeltaKind::B2Zero);

        // b2 = t(t+1) with distinct roots
        let m = WeierstrassModel::new(p3(&[0, 1, 1]), p3(&[0, 1]), p3(&[0, 1])).unwrap();
        assert_eq!(
            recognize_additive_delta(&m),
            AdditiveDeltaKind::DistinctRoots
        );
        assert!(m.discriminant().coeff(11).is_zero());

        // b2 = t^2
        let m = WeierstrassModel::new(p3(&[0, 0, 1]), p3(&[0, 1]), p3(&[0, 0, 1])).unwrap();
        assert_eq!(recognize_additive_delta(&m), AdditiveDeltaKind::DoubleRoot);
        assert!(m.discriminant().coeff(4).is_zero());
        assert!(m.discriminant().coeff(5).is_zero());

        // not in additive shape
        let m = WeierstrassModel::new(p3(&[1]), p3(&[]), p3(&[1])).unwrap();
        assert_eq!(
            recognize_additive_delta(&m),
            AdditiveDeltaKind::NotAdditiveNormal
        );
    }

    #[test]
    fn additive_shape_to_model() {
        let shape = AdditiveShape {
            c1: p3(&[0, 1]), // t
            c3: p3(&[1, 1]), // t + 1
            c5: p3(&[2, 1]), // t + 2
        };
        let m = shape.to_model().unwrap();
        assert_eq!(m.b2(), &p3(&[0, 0, 1]));
        assert_eq!(m.b4(), &-&p3(&[0, 1, 1]));
        assert_eq!(m.b6(), &p3(&[0, 2, 1]));
    }

    #[test]
    fn model_file_roundtrip() {
        let m = WeierstrassModel::new(p3(&[0, 0, 1]), -&p3(&[0, 1, 1]), p3(&[0, 2, 1])).unwrap();
        let text = m.to_model_file();
        let back = WeierstrassModel::parse_model_file(&text).unwrap();
        assert_eq!(back, m);
        assert!(WeierstrassModel::parse_model_file("nonsense").is_err());
    }
}
