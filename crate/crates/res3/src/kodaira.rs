//! Fibre classification: Tate's algorithm at any place of the base line and
//! the fibre-invariant tables.
//!
//! The algorithm runs on the general-form invariants of
//! `y^2 = x^3 + a2 x^2 + a4 x + a6` with (a2, a4, a6) = (b2, -b4, b6), all
//! integer constants reduced mod 3. Places of degree > 1 are handled by base
//! change to the extension field obtained by adjoining a root; the fibre
//! type over a degree-d place is shared by its d geometric points, so the
//! configuration receives d copies.
//!
//! Delta values of additive fibres in characteristic 3 differ from the
//! familiar characteristic-0 ones (wild ramification); the per-type sets
//! accepted here are exactly the rows of the invariant table.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::ff::{Field, FieldElement};
use crate::lattice::{AdeComponent, AdeLattice};
use crate::surface::WeierstrassModel;
use crate::upoly::{Poly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KodairaError {
    #[error("model is not minimal at the place (Tate's algorithm loops)")]
    NonMinimal,
    #[error("place does not divide the discriminant")]
    PlaceNotRoot,
    #[error("place polynomial must be monic irreducible")]
    BadPlace,
    #[error("classification over a degree-{place} place needs GF(3^{needed}), beyond the supported tower")]
    FieldTooLarge { place: usize, needed: usize },
    #[error("internal Tate invariant violated: {0}")]
    Internal(&'static str),
    #[error("invalid configuration notation `{0}`")]
    BadNotation(String),
    #[error("configuration `{0}` is ambiguous; candidates: {1}")]
    AmbiguousNotation(String, String),
    #[error("no consistent delta assignment for `{0}`")]
    NoDeltaAssignment(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

// ---------------------------------------------------------------------------
// Kodaira types and the invariant table
// ---------------------------------------------------------------------------

/// Kodaira symbol of a fibre. `I(0)` denotes a smooth fibre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    pub fn is_multiplicative(&self) -> bool {
        matches!(self, KodairaType::I(n) if *n >= 1)
    }

    pub fn is_additive(&self) -> bool {
        !matches!(self, KodairaType::I(_))
    }

    /// Rank of the root lattice spanned by the fibre components missing the
    /// zero section.
    pub fn rank(&self) -> u32 {
        match self {
            KodairaType::I(n) => n.saturating_sub(1),
            KodairaType::II => 0,
            KodairaType::III => 1,
            KodairaType::IV => 2,
            KodairaType::IStar(n) => 4 + n,
            KodairaType::IVStar => 6,
            KodairaType::IIIStar => 7,
            KodairaType::IIStar => 8,
        }
    }

    /// The associated root lattice (empty sum for II, I_0 and I_1).
    pub fn lattice(&self) -> AdeLattice {
        let mut comps = Vec::new();
        match self {
            KodairaType::I(n) if *n >= 2 => comps.push(AdeComponent::A(*n - 1)),
            KodairaType::I(_) | KodairaType::II => {}
            KodairaType::III => comps.push(AdeComponent::A(1)),
            KodairaType::IV => comps.push(AdeComponent::A(2)),
            KodairaType::IStar(n) => comps.push(AdeComponent::D(4 + *n)),
            KodairaType::IVStar => comps.push(AdeComponent::E(6)),
            KodairaType::IIIStar => comps.push(AdeComponent::E(7)),
            KodairaType::IIStar => comps.push(AdeComponent::E(8)),
        }
        AdeLattice::new(comps)
    }

    /// Lattice discriminant column of the invariant table. The listed value
    /// for type II (trivial lattice) is 0; I_n carries d = n.
    pub fn lattice_disc(&self) -> u64 {
        match self {
            KodairaType::I(n) => *n as u64,
            KodairaType::II => 0,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::IStar(_) => 4,
            KodairaType::IVStar => 3,
            KodairaType::IIIStar => 2,
            KodairaType::IIStar => 1,
        }
    }

    /// Delta values this type can take in characteristic 3.
    pub fn allowed_deltas(&self) -> Vec<u32> {
        match self {
            KodairaType::I(n) => vec![*n],
            KodairaType::II => vec![3, 4, 6, 7, 9, 12],
            KodairaType::III => vec![3],
            KodairaType::IV => vec![5, 6, 8, 9, 12],
            KodairaType::IStar(n) => vec![6 + n],
            KodairaType::IVStar => vec![9, 10, 12],
            KodairaType::IIIStar => vec![9],
            KodairaType::IIStar => vec![11, 12],
        }
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{}", n),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IStar(n) => write!(f, "I{}*", n),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

/// (rank, lattice, lattice discriminant) for a fibre type, as tabulated.
pub fn invariants(symbol: KodairaType) -> (u32, AdeLattice, u64) {
    (symbol.rank(), symbol.lattice(), symbol.lattice_disc())
}

/// The case label of an isolated additive fibre with the given delta, from
/// the characteristic-3 classification of additive fibres. The two delta-6
/// sub-cases of I0* share one Weierstrass shape and are merged as "4".
/// Returns `None` when (symbol, delta) is not a table row.
pub fn lang_case(symbol: KodairaType, delta: u32) -> Option<&'static str> {
    Some(match (symbol, delta) {
        (KodairaType::II, 3) => "1A",
        (KodairaType::II, 4) => "1B",
        (KodairaType::II, 6) => "1C",
        (KodairaType::II, 7) => "1D",
        (KodairaType::II, 9) => "1E",
        (KodairaType::II, 12) => "1F",
        (KodairaType::III, 3) => "2",
        (KodairaType::IV, 5) => "3A",
        (KodairaType::IV, 6) => "3B",
        (KodairaType::IV, 8) => "3C",
        (KodairaType::IV, 9) => "3D",
        (KodairaType::IV, 12) => "3E",
        (KodairaType::IStar(0), 6) => "4",
        (KodairaType::IStar(1), 7) => "5A",
        (KodairaType::IStar(2), 8) => "5B",
        (KodairaType::IStar(3), 9) => "5C",
        (KodairaType::IStar(4), 10) => "5D",
        (KodairaType::IVStar, 9) => "6A",
        (KodairaType::IVStar, 10) => "6B",
        (KodairaType::IVStar, 12) => "6C",
        (KodairaType::IIIStar, 9) => "7",
        (KodairaType::IIStar, 11) => "8A",
        (KodairaType::IIStar, 12) => "8B",
        _ => return None,
    })
}

/// Full invariant record of one singular fibre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibreInvariants {
    pub delta: u32,
    pub rank: u32,
    pub lattice: AdeLattice,
    pub lattice_disc: u64,
    pub lang_case: Option<&'static str>,
}

impl FibreInvariants {
    pub fn of(symbol: KodairaType, delta: u32) -> FibreInvariants {
        FibreInvariants {
            delta,
            rank: symbol.rank(),
            lattice: symbol.lattice(),
            lattice_disc: symbol.lattice_disc(),
            lang_case: if symbol.is_additive() {
                lang_case(symbol, delta)
            } else {
                None
            },
        }
    }
}

// ---------------------------------------------------------------------------
// Fibres and configurations
// ---------------------------------------------------------------------------

/// One singular fibre: a Kodaira symbol together with its delta invariant
/// (the local vanishing order of the discriminant).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fibre {
    pub symbol: KodairaType,
    pub delta: u32,
}

impl Fibre {
    pub fn new(symbol: KodairaType, delta: u32) -> Fibre {
        Fibre { symbol, delta }
    }

    pub fn multiplicative(n: u32) -> Fibre {
        Fibre {
            symbol: KodairaType::I(n),
            delta: n,
        }
    }

    pub fn invariants(&self) -> FibreInvariants {
        FibreInvariants::of(self.symbol, self.delta)
    }

    /// Ordering by severity: additive before multiplicative, then larger
    /// delta, then larger rank.
    fn severity_key(&self) -> (u32, u32, u32) {
        (
            if self.symbol.is_additive() { 1 } else { 0 },
            self.delta,
            self.symbol.rank(),
        )
    }
}

/// A configuration: the multiset of singular fibres of one surface,
/// including the fibre at infinity. Deltas always sum to 12.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    /// Sorted by decreasing severity for canonical form.
    fibres: Vec<Fibre>,
}

impl Configuration {
    pub fn new(mut fibres: Vec<Fibre>) -> Configuration {
        fibres.sort_by(|a, b| match b.severity_key().cmp(&a.severity_key()) {
            Ordering::Equal => format!("{}", a.symbol).cmp(&format!("{}", b.symbol)),
            o => o,
        });
        Configuration { fibres }
    }

    pub fn fibres(&self) -> &[Fibre] {
        &self.fibres
    }

    pub fn delta_sum(&self) -> u32 {
        self.fibres.iter().map(|f| f.delta).sum()
    }

    pub fn rank_sum(&self) -> u32 {
        self.fibres.iter().map(|f| f.symbol.rank()).sum()
    }

    /// Product of lattice discriminants; trivial lattices contribute their
    /// listed value (0 for type II, n for I_n), and 0 counts as a square.
    pub fn disc_product(&self) -> u64 {
        self.fibres
            .iter()
            .map(|f| f.symbol.lattice_disc())
            .product()
    }

    /// Direct sum of the fibre lattices.
    pub fn lattice(&self) -> AdeLattice {
        let mut comps = Vec::new();
        for f in &self.fibres {
            comps.extend(f.symbol.lattice().components().iter().cloned());
        }
        AdeLattice::new(comps)
    }

    pub fn additive_fibres(&self) -> impl Iterator<Item = &Fibre> {
        self.fibres.iter().filter(|f| f.symbol.is_additive())
    }

    pub fn multiplicative_parts(&self) -> Vec<u32> {
        let mut parts: Vec<u32> = self
            .fibres
            .iter()
            .filter_map(|f| match f.symbol {
                KodairaType::I(n) if n >= 1 => Some(n),
                _ => None,
            })
            .collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    pub fn is_purely_multiplicative(&self) -> bool {
        self.fibres.iter().all(|f| f.symbol.is_multiplicative())
    }

    /// A purely multiplicative configuration from a partition of 12.
    pub fn from_partition(parts: &[u32]) -> Configuration {
        Configuration::new(parts.iter().map(|&n| Fibre::multiplicative(n)).collect())
    }

    /// Notation: additive symbols first (by severity), multiplicative fibres
    /// as bare integers, `^k` for repetition, e.g. `II 5 2 1^2`.
    pub fn notation(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut run: Option<(String, u32)> = None;
        let flush = |run: &mut Option<(String, u32)>, parts: &mut Vec<String>| {
            if let Some((s, k)) = run.take() {
                if k == 1 {
                    parts.push(s);
                } else {
                    parts.push(format!("{}^{}", s, k));
                }
            }
        };
        for f in &self.fibres {
            let token = match f.symbol {
                KodairaType::I(n) => format!("{}", n),
                s => format!("{}", s),
            };
            match &mut run {
                Some((s, k)) if *s == token => *k += 1,
                _ => {
                    flush(&mut run, &mut parts);
                    run = Some((token, 1));
                }
            }
        }
        flush(&mut run, &mut parts);
        parts.join(" ")
    }

    /// Notation with explicit deltas on additive symbols, e.g. `II(9) II(3)`.
    /// Unambiguous where the bare notation may not be.
    pub fn annotated_notation(&self) -> String {
        let parts: Vec<String> = self
            .fibres
            .iter()
            .map(|f| match f.symbol {
                KodairaType::I(n) => format!("{}", n),
                s => format!("{}({})", s, f.delta),
            })
            .collect();
        parts.join(" ")
    }

    /// Parse with the delta of the worst (first-listed) additive fibre
    /// pinned, as a case label does in the census lists. Resolves strings
    /// like `IV II 3` that are ambiguous on their own.
    pub fn parse_with_worst_delta(s: &str, worst_delta: u32) -> Result<Configuration, KodairaError> {
        let mut pinned = false;
        let mut out = String::new();
        for raw in s.split_whitespace() {
            if !pinned && raw.parse::<u32>().is_err() && !raw.contains('(') {
                // the first bare additive token carries the case delta
                // (one fibre only, so a ^k group is split)
                let (token, reps) = match raw.split_once('^') {
                    Some((t, k)) => {
                        let k: u32 = k
                            .parse()
                            .map_err(|_| KodairaError::BadNotation(s.to_string()))?;
                        (t, k)
                    }
                    None => (raw, 1),
                };
                out.push_str(&format!("{token}({worst_delta}) "));
                if reps > 1 {
                    out.push_str(&format!("{token}^{} ", reps - 1));
                }
                pinned = true;
            } else {
                out.push_str(raw);
                out.push(' ');
            }
        }
        Configuration::parse(out.trim())
    }

    /// Parse the notation grammar. Additive symbols may carry explicit
    /// deltas (`II(9)`); bare additive symbols get deltas solved from the
    /// constraint that all deltas sum to 12. Ambiguity is an error listing
    /// the candidates.
    pub fn parse(s: &str) -> Result<Configuration, KodairaError> {
        let mut explicit: Vec<Fibre> = Vec::new();
        let mut open: Vec<KodairaType> = Vec::new(); // additive, delta unknown
        for raw in s.split_whitespace() {
            let (token, count) = match raw.split_once('^') {
                Some((t, k)) => {
                    let k: u32 = k
                        .parse()
                        .map_err(|_| KodairaError::BadNotation(s.to_string()))?;
                    if k == 0 {
                        return Err(KodairaError::BadNotation(s.to_string()));
                    }
                    (t, k)
                }
                None => (raw, 1),
            };
            for _ in 0..count {
                if let Ok(n) = token.parse::<u32>() {
                    if n == 0 || n > 12 {
                        return Err(KodairaError::BadNotation(s.to_string()));
                    }
                    explicit.push(Fibre::multiplicative(n));
                    continue;
                }
                let (sym_str, delta) = match token.split_once('(') {
                    Some((sym, rest)) => {
                        let d = rest
                            .strip_suffix(')')
                            .and_then(|x| x.parse::<u32>().ok())
                            .ok_or_else(|| KodairaError::BadNotation(s.to_string()))?;
                        (sym, Some(d))
                    }
                    None => (token, None),
                };
                let sym = parse_additive_symbol(sym_str)
                    .ok_or_else(|| KodairaError::BadNotation(s.to_string()))?;
                match delta {
                    Some(d) => {
                        if !sym.allowed_deltas().contains(&d) {
                            return Err(KodairaError::BadNotation(s.to_string()));
                        }
                        explicit.push(Fibre::new(sym, d));
                    }
                    None => open.push(sym),
                }
            }
        }
        let fixed: u32 = explicit.iter().map(|f| f.delta).sum();
        if fixed > 12 {
            return Err(KodairaError::NoDeltaAssignment(s.to_string()));
        }
        let mut assignments = Vec::new();
        solve_deltas(&open, 12 - fixed, &mut Vec::new(), &mut assignments);
        match assignments.len() {
            0 => Err(KodairaError::NoDeltaAssignment(s.to_string())),
            1 => {
                let mut fibres = explicit;
                fibres.extend(
                    open.iter()
                        .zip(&assignments[0])
                        .map(|(&sym, &d)| Fibre::new(sym, d)),
                );
                Ok(Configuration::new(fibres))
            }
            _ => {
                let mut cands: Vec<String> = assignments
                    .iter()
                    .map(|a| {
                        let mut fibres = explicit.clone();
                        fibres
                            .extend(open.iter().zip(a).map(|(&sym, &d)| Fibre::new(sym, d)));
                        Configuration::new(fibres).annotated_notation()
                    })
                    .collect();
                cands.sort();
                cands.dedup();
                if cands.len() == 1 {
                    // distinct assignments collapsing to one multiset
                    return Configuration::parse(&cands[0]);
                }
                Err(KodairaError::AmbiguousNotation(
                    s.to_string(),
                    cands.join(" | "),
                ))
            }
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.notation())
    }
}

fn parse_additive_symbol(s: &str) -> Option<KodairaType> {
    Some(match s {
        "II" => KodairaType::II,
        "III" => KodairaType::III,
        "IV" => KodairaType::IV,
        "I0*" => KodairaType::IStar(0),
        "I1*" => KodairaType::IStar(1),
        "I2*" => KodairaType::IStar(2),
        "I3*" => KodairaType::IStar(3),
        "I4*" => KodairaType::IStar(4),
        "IV*" => KodairaType::IVStar,
        "III*" => KodairaType::IIIStar,
        "II*" => KodairaType::IIStar,
        _ => return None,
    })
}

fn solve_deltas(
    open: &[KodairaType],
    remaining: u32,
    acc: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if open.is_empty() {
        if remaining == 0 {
            out.push(acc.clone());
        }
        return;
    }
    let sym = open[0];
    for d in sym.allowed_deltas() {
        if d <= remaining {
            acc.push(d);
            solve_deltas(&open[1..], remaining - d, acc, out);
            acc.pop();
        }
    }
}

// ---------------------------------------------------------------------------
// Tate's algorithm
// ---------------------------------------------------------------------------

/// A place of the base line: a monic irreducible polynomial, or the point at
/// infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

/// Classification of the fibre over one place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibreReport {
    pub symbol: KodairaType,
    pub invariants: FibreInvariants,
}

/// Local Tate data: the a-invariants (a2, a4, a6) of
/// `y^2 = x^3 + a2 x^2 + a4 x + a6` as polynomials, classified at t = 0.
struct TateLocal {
    a2: Poly,
    a4: Poly,
    a6: Poly,
}

impl TateLocal {
    fn from_model(m: &WeierstrassModel) -> TateLocal {
        TateLocal {
            a2: m.b2().clone(),
            a4: -m.b4(),
            a6: m.b6().clone(),
        }
    }

    fn ord(p: &Poly) -> usize {
        // effectively-infinite order for the zero polynomial
        p.ord_at_zero().unwrap_or(usize::MAX / 2)
    }

    fn red(p: &Poly, j: usize) -> FieldElement {
        p.coeff(j)
    }

    /// x <- x + r: a2 stays (3r = 0), a4 += 2 r a2, a6 += r a4 + r^2 a2 + r^3.
    fn translate_x(&mut self, r: &Poly) {
        let two = Poly::constant(self.a2.field().from_int(2));
        let a4_new = &self.a4 + &(&(&two * r) * &self.a2);
        let a6_new =
            &(&self.a6 + &(r * &self.a4)) + &(&(&(r * r) * &self.a2) + &(&(r * r) * r));
        self.a4 = a4_new;
        self.a6 = a6_new;
    }

    fn delta(&self) -> Poly {
        // -b2^2 (b2 b6 - b4^2) + b4^3 with (b2, b4, b6) = (a2, -a4, a6)
        let b2 = &self.a2;
        let b4 = -&self.a4;
        let b6 = &self.a6;
        let b2sq = b2 * b2;
        let inner = &(b2 * b6) - &(&b4 * &b4);
        &(&(&b4 * &b4) * &b4) - &(&b2sq * &inner)
    }

    /// Run Tate's algorithm at t = 0. Returns the Kodaira symbol; the delta
    /// invariant is the vanishing order of the discriminant.
    fn classify(&mut self) -> Result<KodairaType, KodairaError> {
        let delta = self.delta();
        let vd = match delta.ord_at_zero() {
            None => return Err(KodairaError::Internal("discriminant vanished identically")),
            Some(0) => return Ok(KodairaType::I(0)),
            Some(v) => v,
        };
        // b2 = a2 mod 3; multiplicative exactly when it is a unit at the place
        if Self::ord(&self.a2) == 0 {
            return Ok(KodairaType::I(vd as u32));
        }

        // Additive. Move the cusp of the reduction to x = 0: the reduced RHS
        // is x^3 + a6(0) (a2 and a4 vanish at 0), a perfect cube in char 3.
        if Self::ord(&self.a4) == 0 {
            return Err(KodairaError::Internal("additive fibre with unit a4"));
        }
        let r0 = (-&Self::red(&self.a6, 0)).cube_root();
        if !r0.is_zero() {
            self.translate_x(&Poly::constant(r0));
        }
        debug_assert!(Self::ord(&self.a6) >= 1);

        if Self::ord(&self.a6) < 2 {
            return Ok(KodairaType::II);
        }
        // b8 = a2 a6 - a4^2 mod 3
        let b8 = &(&self.a2 * &self.a6) - &(&self.a4 * &self.a4);
        if Self::ord(&b8) < 3 {
            return Ok(KodairaType::III);
        }
        if Self::ord(&self.a6) < 3 {
            return Ok(KodairaType::IV);
        }
        if Self::ord(&self.a4) < 2 {
            return Err(KodairaError::Internal("valuations too small at step 7"));
        }

        // P(T) = T^3 + c2 T^2 + c4 T + c6 over the residue field
        let c2 = Self::red(&self.a2, 1);
        let c4 = Self::red(&self.a4, 2);
        let c6 = Self::red(&self.a6, 3);

        if !c2.is_zero() {
            // P' = -c2 T + c4 has the single critical point T0 = c4 / c2
            let t0 = c4.try_div(&c2).unwrap();
            let p_at = {
                let c2 = c2.clone();
                let c4 = c4.clone();
                let c6 = c6.clone();
                move |x: &FieldElement| -> FieldElement {
                    let x2 = x * x;
                    let x3 = &x2 * x;
                    &(&x3 + &(&c2 * &x2)) + &(&(&c4 * x) + &c6)
                }
            };
            if !p_at(&t0).is_zero() {
                // three distinct roots
                if vd != 6 {
                    return Err(KodairaError::Internal("I0* with delta != 6"));
                }
                return Ok(KodairaType::IStar(0));
            }
            // double root at T0, simple root elsewhere: I_n* branch
            if !t0.is_zero() {
                self.translate_x(&Poly::monomial(t0, 1));
            }
            return self.istar_subloop(vd);
        }

        if !c4.is_zero() {
            // T^3 + c4 T + c6 with c4 != 0 is squarefree in char 3
            if vd != 6 {
                return Err(KodairaError::Internal("I0* with delta != 6"));
            }
            return Ok(KodairaType::IStar(0));
        }

        // triple root at the cube root of -c6
        let t0 = (-&c6).cube_root();
        if !t0.is_zero() {
            self.translate_x(&Poly::monomial(t0, 1));
        }
        debug_assert!(Self::ord(&self.a2) >= 2);
        debug_assert!(Self::ord(&self.a4) >= 3);
        debug_assert!(Self::ord(&self.a6) >= 4);

        if Self::ord(&self.a6) == 4 {
            return Ok(KodairaType::IVStar);
        }
        if Self::ord(&self.a4) == 3 {
            return Ok(KodairaType::IIIStar);
        }
        if Self::ord(&self.a6) == 5 {
            return Ok(KodairaType::IIStar);
        }
        // v(a2) >= 2, v(a4) >= 4, v(a6) >= 6: the substitution
        // (x, y) -> (t^2 x, t^3 y) strictly shrinks the model
        Err(KodairaError::NonMinimal)
    }

    /// Sub-loop deciding n for I_n* fibres (double root already at T = 0, so
    /// v(a2) = 1, v(a4) >= 3, v(a6) >= 4). With a3 = 0 the Y-quadratics have
    /// their double root at 0, so no y-translations arise.
    fn istar_subloop(&mut self, vd: usize) -> Result<KodairaType, KodairaError> {
        debug_assert_eq!(Self::ord(&self.a2), 1);
        let mut q = 2usize;
        loop {
            // Y^2 = a6 / t^(2q): distinct roots iff the coefficient is a unit
            if !Self::red(&self.a6, 2 * q).is_zero() {
                let n = (2 * q - 3) as u32;
                if vd != 6 + n as usize {
                    return Err(KodairaError::Internal("I_n* delta mismatch"));
                }
                return Ok(KodairaType::IStar(n));
            }
            // (a2/t) X^2 + (a4/t^(q+1)) X + a6/t^(2q+1)
            let a = Self::red(&self.a2, 1);
            let b = Self::red(&self.a4, q + 1);
            let c = Self::red(&self.a6, 2 * q + 1);
            let disc = &(&b * &b) - &(&a * &c);
            if !disc.is_zero() {
                let n = (2 * q - 2) as u32;
                if vd != 6 + n as usize {
                    return Err(KodairaError::Internal("I_n* delta mismatch"));
                }
                return Ok(KodairaType::IStar(n));
            }
            // double root of the X-quadratic: X0 = -b/(2a) = b/a in char 3
            let x0 = b.try_div(&a).unwrap();
            if !x0.is_zero() {
                self.translate_x(&Poly::monomial(x0, q));
            }
            q += 1;
            if q > vd + 2 {
                return Err(KodairaError::NonMinimal);
            }
        }
    }
}

/// Classify the fibre of `m` over a place. For a finite place the polynomial
/// must be monic irreducible and divide the discriminant; for degree > 1
/// the computation moves to the extension obtained by adjoining a root.
pub fn tate_classify(m: &WeierstrassModel, place: &Place) -> Result<FibreReport, KodairaError> {
    match place {
        Place::Infinity => {
            let flipped = m.flip_to_infinity();
            let delta = flipped.discriminant();
            let v = delta.ord_at_zero().unwrap_or(0);
            if v == 0 {
                return Err(KodairaError::PlaceNotRoot);
            }
            classify_at_origin(&flipped, v)
        }
        Place::Finite(pi) => {
            if !pi.is_monic() || pi.deg_or_zero() < 1 {
                return Err(KodairaError::BadPlace);
            }
            let delta = m.discriminant();
            if !delta.rem(pi)?.is_zero() {
                return Err(KodairaError::PlaceNotRoot);
            }
            let mult = {
                let mut d = delta.clone();
                let mut c = 0usize;
                loop {
                    let (q, r) = d.divmod(pi)?;
                    if !r.is_zero() {
                        break;
                    }
                    c += 1;
                    d = q;
                }
                c
            };
            let d = pi.deg_or_zero();
            if d == 1 {
                let root = -&pi.coeff(0);
                let local = m.shift_base(&root);
                classify_at_origin(&local, mult)
            } else {
                let k = m.field().degree();
                let needed = k * d;
                if needed > 12 {
                    return Err(KodairaError::FieldTooLarge { place: d, needed });
                }
                let big = Field::with_degree(needed)
                    .map_err(|_| KodairaError::FieldTooLarge { place: d, needed })?;
                let lifted = m
                    .embed_into(&big)
                    .map_err(|_| KodairaError::Internal("embedding failed"))?;
                let pi_big = pi
                    .embed_into(&big)
                    .map_err(|_| KodairaError::Internal("embedding failed"))?;
                let root = pi_big
                    .roots()?
                    .first()
                    .map(|(r, _)| r.clone())
                    .ok_or(KodairaError::Internal("no root in splitting extension"))?;
                let local = lifted.shift_base(&root);
                classify_at_origin(&local, mult)
            }
        }
    }
}

fn classify_at_origin(
    m: &WeierstrassModel,
    delta_ord: usize,
) -> Result<FibreReport, KodairaError> {
    let mut local = TateLocal::from_model(m);
    let symbol = local.classify()?;
    Ok(FibreReport {
        symbol,
        invariants: FibreInvariants::of(symbol, delta_ord as u32),
    })
}

/// Classify every singular fibre of the model (finite places through the
/// factored discriminant, plus the place at infinity). A place of degree d
/// contributes d copies of its fibre. The deltas always sum to 12.
pub fn classify_all(m: &WeierstrassModel) -> Result<Configuration, KodairaError> {
    let delta = m.discriminant();
    let fac = delta.factor()?;
    let mut fibres = Vec::new();
    for (pi, mult) in &fac.factors {
        let d = pi.deg_or_zero();
        // multiplicative exactly when b2 is a unit at the place
        let b2_res = m.b2().rem(pi)?;
        let report = if !b2_res.is_zero() {
            FibreReport {
                symbol: KodairaType::I(*mult),
                invariants: FibreInvariants::of(KodairaType::I(*mult), *mult),
            }
        } else {
            tate_classify(m, &Place::Finite(pi.clone()))?
        };
        for _ in 0..d {
            fibres.push(Fibre::new(report.symbol, report.invariants.delta));
        }
    }
    let inf_ord = 12 - delta.degree().unwrap();
    if inf_ord > 0 {
        let report = tate_classify(m, &Place::Infinity)?;
        debug_assert_eq!(report.invariants.delta as usize, inf_ord);
        fibres.push(Fibre::new(report.symbol, report.invariants.delta));
    }
    let cfg = Configuration::new(fibres);
    debug_assert_eq!(cfg.delta_sum(), 12);
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::upoly::Poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f3() -> Field {
        Field::gf3()
    }

    fn p3(ints: &[i64]) -> Poly {
        Poly::from_ints(&f3(), ints)
    }

    fn model(b2: &[i64], b4: &[i64], b6: &[i64]) -> WeierstrassModel {
        WeierstrassModel::new(p3(b2), p3(b4), p3(b6)).unwrap()
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
    fn invariant_table_rows() {
        assert_eq!(KodairaType::I(7).rank(), 6);
        assert_eq!(KodairaType::I(7).lattice_disc(), 7);
        assert_eq!(
            KodairaType::I(7).lattice(),
            AdeLattice::new(vec![AdeComponent::A(6)])
        );
        assert_eq!(KodairaType::IIIStar.rank(), 7);
        assert_eq!(KodairaType::IIIStar.lattice_disc(), 2);
        assert_eq!(KodairaType::I(1).rank(), 0);
        assert_eq!(KodairaType::I(1).lattice_disc(), 1);
        assert!(KodairaType::I(1).lattice().components().is_empty());
        assert_eq!(KodairaType::IStar(2).rank(), 6);
        assert_eq!(
            KodairaType::IStar(2).lattice(),
            AdeLattice::new(vec![AdeComponent::D(6)])
        );
    }

    #[test]
    fn lang_case_rows() {
        assert_eq!(lang_case(KodairaType::II, 6), Some("1C"));
        assert_eq!(lang_case(KodairaType::IStar(0), 6), Some("4"));
        assert_eq!(lang_case(KodairaType::II, 5), None);
        assert_eq!(lang_case(KodairaType::IV, 8), Some("3C"));
    }

    #[test]
    fn classify_ii9_model() {
        // y^2 = x^3 + t^2 x^2 + t(t+1) x + t(t+2): II at 0 (delta 3), I9 at
        // infinity
        let m = model(&[0, 0, 1], &[0, -1, -1], &[0, 2, 1]);
        let zero_place = Place::Finite(p3(&[0, 1]));
        let at0 = tate_classify(&m, &zero_place).unwrap();
        assert_eq!(at0.symbol, KodairaType::II);
        assert_eq!(at0.invariants.delta, 3);
        assert_eq!(at0.invariants.lang_case, Some("1A"));

        let at_inf = tate_classify(&m, &Place::Infinity).unwrap();
        assert_eq!(at_inf.symbol, KodairaType::I(9));
        assert_eq!(at_inf.invariants.delta, 9);
        assert_eq!(at_inf.invariants.lattice_disc, 9);

        let cfg = classify_all(&m).unwrap();
        assert_eq!(cfg.notation(), "II 9");
    }

    #[test]
    fn classify_i0star_iv_1_model() {
        // y^2 = x^3 + t x^2 + t^2 x + t^3 (t+2): I0* at 0, I1 at 1, IV at
        // infinity (delta 5)
        let m = model(&[0, 1], &[0, 0, -1], &[0, 0, 0, 2, 1]);
        let at0 = tate_classify(&m, &Place::Finite(p3(&[0, 1]))).unwrap();
        assert_eq!(at0.symbol, KodairaType::IStar(0));
        assert_eq!(at0.invariants.delta, 6);
        assert_eq!(at0.invariants.lang_case, Some("4"));

        let at1 = tate_classify(&m, &Place::Finite(p3(&[-1, 1]))).unwrap();
        assert_eq!(at1.symbol, KodairaType::I(1));
        assert_eq!(at1.invariants.delta, 1);

        let at_inf = tate_classify(&m, &Place::Infinity).unwrap();
        assert_eq!(at_inf.symbol, KodairaType::IV);
        assert_eq!(at_inf.invariants.delta, 5);
        assert_eq!(at_inf.invariants.lang_case, Some("3A"));

        let cfg = classify_all(&m).unwrap();
        assert_eq!(cfg.notation(), "I0* IV 1");
    }

    #[test]
    fn smooth_place_is_an_error_for_tate() {
        let m = model(&[0, 0, 1], &[0, -1, -1], &[0, 2, 1]);
        // t - 1 does not divide D = -t^3
        assert_eq!(
            tate_classify(&m, &Place::Finite(p3(&[-1, 1]))),
            Err(KodairaError::PlaceNotRoot)
        );
    }

    #[test]
    fn delta_sums_to_12_on_random_models() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for k in [1usize, 2] {
            let field = Field::with_degree(k).unwrap();
            for _ in 0..80 {
                let m = random_model(&field, &mut rng);
                if let Ok(cfg) = classify_all(&m) {
                    assert_eq!(cfg.delta_sum(), 12);
                }
            }
        }
    }

    #[test]
    fn multiplicative_criterion_cross_check() {
        // every simple finite root of D has b2 != 0 there and is an I1
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..50 {
            let m = random_model(&f3(), &mut rng);
            let delta = m.discriminant();
            for (root, mult) in delta.roots().unwrap() {
                if mult == 1 {
                    let pi = Poly::from_coeffs(&f3(), vec![-&root, f3().one()]);
                    let rep = tate_classify(&m, &Place::Finite(pi)).unwrap();
                    assert!(!m.b2().eval(&root).is_zero());
                    assert_eq!(rep.symbol, KodairaType::I(1));
                }
            }
        }
    }

    #[test]
    fn degree_two_place_matches_extension_classification() {
        // classify over an irreducible quadratic place, then over GF(9) at a
        // linear place
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let f9 = Field::with_degree(2).unwrap();
        let mut checked = 0;
        for _ in 0..200 {
            let m = random_model(&f3(), &mut rng);
            let fac = m.discriminant().factor().unwrap();
            for (pi, _) in &fac.factors {
                if pi.deg_or_zero() != 2 {
                    continue;
                }
                let rep = match tate_classify(&m, &Place::Finite(pi.clone())) {
                    Ok(r) => r,
                    Err(KodairaError::NonMinimal) => continue,
                    Err(e) => panic!("{e}"),
                };
                let m9 = m.embed_into(&f9).unwrap();
                let pi9 = pi.embed_into(&f9).unwrap();
                let root = pi9.roots().unwrap()[0].0.clone();
                let lin = Poly::from_coeffs(&f9, vec![-&root, f9.one()]);
                let rep9 = tate_classify(&m9, &Place::Finite(lin)).unwrap();
                assert_eq!(rep.symbol, rep9.symbol);
                assert_eq!(rep.invariants.delta, rep9.invariants.delta);
                checked += 1;
            }
        }
        assert!(checked > 10, "exercised {} degree-2 places", checked);
    }

    #[test]
    fn classify_invariant_under_rescale_and_moebius() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let f = f3();
        for _ in 0..40 {
            let m = random_model(&f, &mut rng);
            let cfg = match classify_all(&m) {
                Ok(c) => c,
                Err(_) => continue, // non-minimal models are rejected
            };
            let r = m.rescale(&f.from_int(2)).unwrap();
            assert_eq!(classify_all(&r).unwrap(), cfg);
            let g = [[f.one(), f.one()], [f.zero(), f.one()]];
            let t = m.moebius_transform(&g).unwrap();
            assert_eq!(classify_all(&t).unwrap(), cfg);
            // t -> 1/t swaps 0 and infinity
            let g = [[f.zero(), f.one()], [f.one(), f.zero()]];
            let t = m.moebius_transform(&g).unwrap();
            assert_eq!(classify_all(&t).unwrap(), cfg);
        }
    }

    #[test]
    fn notation_roundtrip() {
        for s in ["II 5 2 1^2", "I1* 2^2 1", "9 2 1", "II* 1", "I0* IV 1"] {
            let cfg = Configuration::parse(s).unwrap();
            assert_eq!(cfg.notation(), s);
            assert_eq!(Configuration::parse(&cfg.notation()).unwrap(), cfg);
        }
        // annotated forms disambiguate
        let cfg = Configuration::parse("II(9) II(3)").unwrap();
        assert_eq!(cfg.delta_sum(), 12);
        assert_eq!(
            Configuration::parse(&cfg.annotated_notation()).unwrap(),
            cfg
        );
        // bare `II II` is ambiguous: (6,6) and (9,3)
        assert!(matches!(
            Configuration::parse("II II"),
            Err(KodairaError::AmbiguousNotation(..))
        ));
        // `IV II 3` is ambiguous too ((5,4) vs (6,3)); the worst-fibre pin
        // from a case label resolves it
        assert!(matches!(
            Configuration::parse("IV II 3"),
            Err(KodairaError::AmbiguousNotation(..))
        ));
        let cfg = Configuration::parse_with_worst_delta("IV II 3", 5).unwrap();
        let deltas: Vec<u32> = cfg.fibres().iter().map(|f| f.delta).collect();
        assert_eq!(deltas, vec![5, 4, 3]);
        let cfg = Configuration::parse_with_worst_delta("II II", 9).unwrap();
        assert_eq!(cfg.annotated_notation(), "II(9) II(3)");
        // delta solving alone suffices when unique
        let cfg = Configuration::parse("I1* II 1").unwrap();
        let deltas: Vec<u32> = cfg.fibres().iter().map(|f| f.delta).collect();
        assert_eq!(deltas, vec![7, 4, 1]);
        assert!(Configuration::parse("bogus").is_err());
    }

    #[test]
    fn configuration_invariants() {
        let cfg = Configuration::parse("7 3 1^2").unwrap();
        assert_eq!(cfg.rank_sum(), 8);
        assert_eq!(cfg.disc_product(), 21);
        let cfg = Configuration::parse("10 1^2").unwrap();
        assert_eq!(cfg.rank_sum(), 9);
        let cfg = Configuration::parse("2^2 1^8").unwrap();
        assert_eq!(cfg.rank_sum(), 2);
        assert_eq!(cfg.delta_sum(), 12);
    }
}
