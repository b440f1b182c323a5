//! Valencies and total valencies of periodic surface diffeomorphisms.
//!
//! A periodic diffeomorphism `f` of order `n` on a closed surface of genus
//! `g` is determined up to conjugacy by its *total valency*
//! `[g, n; θ₁/λ₁ + … + θ_s/λ_s]`: one fraction per multiple orbit, where
//! `λ` is the isotropy order and `θ` the inverse mod `λ` of the local
//! rotation number of the isotropy generator. Values here are stored in a
//! canonical order (descending `λ`, then ascending `θ`) so that structural
//! equality is multiset equality.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{ActionError, OrbifoldAction, StandardModel};
use crate::arith::{self, gcd};
use crate::family::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValencyError {
    #[error("rotation number {nu} is not a unit modulo {lambda}")]
    InvalidRotation { nu: u64, lambda: u64 },
    #[error("invalid valency {theta}/{lambda}: need 1 <= theta < lambda and gcd(theta, lambda) = 1")]
    InvalidValency { theta: u64, lambda: u64 },
    #[error("isotropy order {lambda} does not divide the period {order}")]
    IsotropyDoesNotDivide { lambda: u64, order: u64 },
    #[error("period must be positive")]
    ZeroOrder,
    #[error("total valency {0} fails validation ({1})")]
    Invalid(String, Validity),
    #[error("no nonnegative integer quotient genus satisfies Riemann-Hurwitz for {0}")]
    NoQuotientGenus(String),
    #[error("exponent {exponent} out of range 1..={max}")]
    ExponentOutOfRange { exponent: u64, max: u64 },
    #[error("genus {0} is below 2; classification needs g >= 2")]
    GenusOutOfRange(u64),
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("malformed total valency literal: {0}")]
    Parse(String),
    #[error("arithmetic overflow")]
    Overflow,
    #[error(transparent)]
    Action(Box<ActionError>),
}

impl From<ActionError> for ValencyError {
    fn from(e: ActionError) -> Self {
        match e {
            ActionError::Valency(v) => v,
            other => ValencyError::Action(Box::new(other)),
        }
    }
}

/// A single valency `θ/λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawValency")]
pub struct Valency {
    theta: u64,
    lambda: u64,
}

#[derive(Deserialize)]
struct RawValency {
    theta: u64,
    lambda: u64,
}

impl TryFrom<RawValency> for Valency {
    type Error = ValencyError;
    fn try_from(raw: RawValency) -> Result<Self, Self::Error> {
        Valency::new(raw.theta, raw.lambda)
    }
}

impl Valency {
    pub fn new(theta: u64, lambda: u64) -> Result<Self, ValencyError> {
        if lambda < 2 || theta == 0 || theta >= lambda || gcd(theta, lambda) != 1 {
            return Err(ValencyError::InvalidValency { theta, lambda });
        }
        Ok(Valency { theta, lambda })
    }

    /// Valency of an orbit whose isotropy generator rotates by `2πν/λ`.
    pub fn from_rotation(nu: u64, lambda: u64) -> Result<Self, ValencyError> {
        let theta = arith::mod_inverse(nu, lambda)?;
        Ok(Valency { theta, lambda })
    }

    pub fn theta(&self) -> u64 {
        self.theta
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    /// The local rotation number `ν = θ⁻¹ mod λ`.
    pub fn rotation(&self) -> u64 {
        arith::mod_inverse(self.theta, self.lambda).expect("valency invariant")
    }

    /// Valency of the same orbit under the inverse diffeomorphism.
    pub fn inverse(&self) -> Valency {
        Valency { theta: self.lambda - self.theta, lambda: self.lambda }
    }

    fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.lambda.cmp(&self.lambda).then(self.theta.cmp(&other.theta))
    }
}

impl fmt::Display for Valency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.theta, self.lambda)
    }
}

/// Outcome of [`TotalValency::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Validity {
    /// Sum of the valencies is an integer.
    pub integral: bool,
    /// Riemann-Hurwitz holds with the stored quotient genus.
    pub riemann_hurwitz: bool,
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        self.integral && self.riemann_hurwitz
    }
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.integral, self.riemann_hurwitz) {
            (true, true) => write!(f, "valid"),
            (false, true) => write!(f, "valency sum is not an integer"),
            (true, false) => write!(f, "Riemann-Hurwitz fails"),
            (false, false) => write!(f, "valency sum is not an integer; Riemann-Hurwitz fails"),
        }
    }
}

/// Total valency `[g, n; Σ θᵢ/λᵢ]` together with the genus of the quotient.
///
/// Constructors enforce the structural invariants (each valency reduced,
/// each `λᵢ | n`) and sort the valencies canonically. Integrality and
/// Riemann-Hurwitz are checked by [`TotalValency::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTotalValency")]
pub struct TotalValency {
    #[serde(rename = "g")]
    genus: u64,
    #[serde(rename = "n")]
    order: u64,
    quotient_genus: u64,
    valencies: Vec<Valency>,
}

#[derive(Deserialize)]
struct RawTotalValency {
    g: u64,
    n: u64,
    quotient_genus: u64,
    valencies: Vec<Valency>,
}

impl TryFrom<RawTotalValency> for TotalValency {
    type Error = ValencyError;
    fn try_from(raw: RawTotalValency) -> Result<Self, Self::Error> {
        TotalValency::new(raw.g, raw.n, raw.quotient_genus, raw.valencies)
    }
}

impl TotalValency {
    pub fn new(
        genus: u64,
        order: u64,
        quotient_genus: u64,
        mut valencies: Vec<Valency>,
    ) -> Result<Self, ValencyError> {
        if order == 0 {
            return Err(ValencyError::ZeroOrder);
        }
        if let Some(v) = valencies.iter().find(|v| order % v.lambda != 0) {
            return Err(ValencyError::IsotropyDoesNotDivide { lambda: v.lambda, order });
        }
        valencies.sort_by(Valency::canonical_cmp);
        Ok(TotalValency { genus, order, quotient_genus, valencies })
    }

    /// Builds a total valency whose quotient genus is the one forced by
    /// Riemann-Hurwitz.
    pub fn with_forced_quotient_genus(
        genus: u64,
        order: u64,
        valencies: Vec<Valency>,
    ) -> Result<Self, ValencyError> {
        let mut tv = TotalValency::new(genus, order, 0, valencies)?;
        tv.quotient_genus = tv
            .forced_quotient_genus()?
            .ok_or_else(|| ValencyError::NoQuotientGenus(tv.to_string()))?;
        Ok(tv)
    }

    /// Total valency of the identity on a genus-`g` surface.
    pub fn identity(genus: u64) -> Self {
        TotalValency { genus, order: 1, quotient_genus: genus, valencies: Vec::new() }
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn quotient_genus(&self) -> u64 {
        self.quotient_genus
    }

    pub fn valencies(&self) -> &[Valency] {
        &self.valencies
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// `Σ (n/λᵢ)(λᵢ − 1)`, the total branching contribution.
    fn branching(&self) -> Result<u128, ValencyError> {
        self.valencies.iter().try_fold(0u128, |acc, v| {
            let term = (self.order / v.lambda) as u128 * (v.lambda - 1) as u128;
            acc.checked_add(term).ok_or(ValencyError::Overflow)
        })
    }

    /// The quotient genus `h` solving `2 − 2g = n(2 − 2h) − Σ (n/λᵢ)(λᵢ − 1)`,
    /// if it is a nonnegative integer.
    pub fn forced_quotient_genus(&self) -> Result<Option<u64>, ValencyError> {
        let n = self.order as i128;
        let lhs = 2 - 2 * self.genus as i128;
        // 2n − 2nh = lhs + B  ⇒  h = (2n − lhs − B) / 2n
        let numer = 2 * n - lhs - self.branching()? as i128;
        if numer < 0 || numer % (2 * n) != 0 {
            return Ok(None);
        }
        Ok(u64::try_from(numer / (2 * n)).ok())
    }

    pub fn is_integral(&self) -> bool {
        // Σ θ/λ ∈ ℤ  ⇔  Σ θ·(n/λ) ≡ 0 (mod n)
        let n = self.order as u128;
        let total = self
            .valencies
            .iter()
            .fold(0u128, |acc, v| (acc + v.theta as u128 * (self.order / v.lambda) as u128) % n);
        total == 0
    }

    pub fn validate(&self) -> Validity {
        let riemann_hurwitz = matches!(self.forced_quotient_genus(), Ok(Some(h)) if h == self.quotient_genus);
        Validity { integral: self.is_integral(), riemann_hurwitz }
    }

    pub(crate) fn ensure_valid(&self) -> Result<(), ValencyError> {
        let v = self.validate();
        if v.is_valid() {
            Ok(())
        } else {
            Err(ValencyError::Invalid(self.to_string(), v))
        }
    }

    /// Number of points with nontrivial isotropy (for an involution, the fixed
    /// point count).
    pub fn multiple_point_count(&self) -> u64 {
        self.valencies.iter().map(|v| self.order / v.lambda).sum()
    }

    /// Total valency of `f⁻¹`.
    pub fn inverse(&self) -> TotalValency {
        let valencies = self.valencies.iter().map(Valency::inverse).collect();
        TotalValency::new(self.genus, self.order, self.quotient_genus, valencies)
            .expect("inverse keeps structure")
    }
}

impl fmt::Display for TotalValency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{};", self.genus, self.order)?;
        for (i, v) in self.valencies.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]@{}", self.quotient_genus)
    }
}

/// Parses the literal syntax `[g,n;t1/l1+t2/l2+...]` with an optional
/// `@h` quotient-genus suffix. A term may carry a multiplicity, written
/// `1/2x6`, `1/2×6` or `1/2*6`. Without `@h` the quotient genus is the one
/// forced by Riemann-Hurwitz.
impl FromStr for TotalValency {
    type Err = ValencyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| ValencyError::Parse(format!("{why} in {s:?}"));
        let s_trim = s.trim();
        let (body, quotient) = match s_trim.rsplit_once('@') {
            Some((b, h)) => (b.trim(), Some(h.trim().parse::<u64>().map_err(|_| bad("bad quotient genus"))?)),
            None => (s_trim, None),
        };
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| bad("expected [g,n;...]"))?;
        let (head, terms) = inner.split_once(';').ok_or_else(|| bad("missing ';'"))?;
        let (g, n) = head.split_once(',').ok_or_else(|| bad("missing ','"))?;
        let genus: u64 = g.trim().parse().map_err(|_| bad("bad genus"))?;
        let order: u64 = n.trim().parse().map_err(|_| bad("bad order"))?;

        let mut valencies = Vec::new();
        let terms = terms.trim();
        if !(terms.is_empty() || terms == "0" || terms == "∅") {
            for term in terms.split('+') {
                let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
                let (frac, mult) = match term.split_once(['x', '×', '*']) {
                    Some((f, m)) => (f.to_string(), m.parse::<usize>().map_err(|_| bad("bad multiplicity"))?),
                    None => (term.clone(), 1),
                };
                let (t, l) = frac.split_once('/').ok_or_else(|| bad("expected theta/lambda"))?;
                let v = Valency::new(
                    t.parse().map_err(|_| bad("bad theta"))?,
                    l.parse().map_err(|_| bad("bad lambda"))?,
                )?;
                valencies.extend(std::iter::repeat_n(v, mult));
            }
        }
        match quotient {
            Some(h) => TotalValency::new(genus, order, h, valencies),
            None => TotalValency::with_forced_quotient_genus(genus, order, valencies),
        }
    }
}

/// Conjugacy test by Nielsen's theorem (plus quotient genus).
pub fn nielsen_equal(a: &TotalValency, b: &TotalValency) -> bool {
    a == b
}

/// Total valency of `f^k` given that of `f`.
///
/// Computed by realising `tv` as a cyclic orbifold action and reading off
/// the element `k`; see [`tv_power_direct`] for the closed arithmetic route.
pub fn tv_power(tv: &TotalValency, k: u64) -> Result<TotalValency, ValencyError> {
    if k == 0 {
        return Err(ValencyError::ZeroExponent);
    }
    tv.ensure_valid()?;
    let action = OrbifoldAction::cyclic_from_tv(tv)?;
    let h = action.group().scale(action.group().generator(), k);
    if h == action.group().identity() {
        return Ok(TotalValency::identity(tv.genus));
    }
    Ok(action.element_tv(h)?)
}

/// Arithmetic form of [`tv_power`].
///
/// For an orbit `θ/λ` of `f`, the points have stabilizer `⟨f^{n/λ}⟩`. Inside
/// `⟨f^k⟩` (order `n′ = n/gcd(n,k)`) the stabilizer shrinks to order
/// `λ′ = n / lcm(gcd(n,k), n/λ)`, the orbit splits into `(n/λ)·λ′/n′` orbits,
/// and the new isotropy generator `(f^k)^{n′/λ′}` is a power of `f^{n/λ}`.
pub fn tv_power_direct(tv: &TotalValency, k: u64) -> Result<TotalValency, ValencyError> {
    if k == 0 {
        return Err(ValencyError::ZeroExponent);
    }
    tv.ensure_valid()?;
    let n = tv.order;
    let gk = gcd(n, k);
    let new_order = n / gk;
    if new_order == 1 {
        return Ok(TotalValency::identity(tv.genus));
    }
    let mut out = Vec::new();
    for v in &tv.valencies {
        let d = n / v.lambda;
        let new_lambda = n / arith::lcm(gk, d)?;
        if new_lambda < 2 {
            continue;
        }
        let new_orbit = new_order / new_lambda;
        let splits = (d * new_lambda) / new_order;
        // (f^k)^{new_orbit} = (f^d)^{k·new_orbit/d}
        let power = ((k % n) as u128 * new_orbit as u128 / d as u128) % v.lambda as u128;
        let nu_full = (v.rotation() as u128 * power) % v.lambda as u128;
        let nu = (nu_full / (v.lambda / new_lambda) as u128) as u64;
        let val = Valency::from_rotation(nu, new_lambda)?;
        out.extend(std::iter::repeat_n(val, splits as usize));
    }
    TotalValency::with_forced_quotient_genus(tv.genus, new_order, out)
}

/// The families of hyperelliptic periodic conjugacy classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TagKind {
    F1,
    F2,
    F3,
    /// `I·f₃^k` for the hyperelliptic involution `I` of the third model.
    IF3,
}

impl TagKind {
    pub const ALL: [TagKind; 4] = [TagKind::F1, TagKind::F2, TagKind::F3, TagKind::IF3];

    /// Largest allowed exponent at genus `g`: the order of `f`.
    pub fn max_exponent(self, g: u64) -> u64 {
        match self {
            TagKind::F1 => Family::F1.rotation_order(g),
            TagKind::F2 => Family::F2.rotation_order(g),
            TagKind::F3 | TagKind::IF3 => Family::F3.rotation_order(g),
        }
    }
}

impl fmt::Display for TagKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TagKind::F1 => "F1",
            TagKind::F2 => "F2",
            TagKind::F3 => "F3",
            TagKind::IF3 => "IF3",
        };
        f.write_str(s)
    }
}

/// A member `f_i^k` (or `I·f₃^k`) of one of the standard families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyTag {
    pub family: TagKind,
    pub exponent: u64,
}

impl FamilyTag {
    pub fn new(family: TagKind, exponent: u64) -> Self {
        FamilyTag { family, exponent }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            TagKind::IF3 => write!(f, "I·f3^{}", self.exponent),
            TagKind::F1 => write!(f, "f1^{}", self.exponent),
            TagKind::F2 => write!(f, "f2^{}", self.exponent),
            TagKind::F3 => write!(f, "f3^{}", self.exponent),
        }
    }
}

/// Total valency of the family member named by `tag` on a genus-`g` surface.
pub fn closed_form_tv(tag: FamilyTag, g: u64) -> Result<TotalValency, ValencyError> {
    if g < 2 {
        return Err(ValencyError::GenusOutOfRange(g));
    }
    let max = tag.family.max_exponent(g);
    if tag.exponent == 0 || tag.exponent > max {
        return Err(ValencyError::ExponentOutOfRange { exponent: tag.exponent, max });
    }
    match tag.family {
        TagKind::F1 => tv_power(&Family::F1.closed_form(g), tag.exponent),
        TagKind::F2 => tv_power(&Family::F2.closed_form(g), tag.exponent),
        TagKind::F3 => tv_power(&Family::F3.closed_form(g), tag.exponent),
        TagKind::IF3 => {
            let model = StandardModel::G3;
            let action = model.action(g)?;
            let grp = action.group();
            let h = grp.add(model.involution(g), grp.scale(model.generator(), tag.exponent));
            Ok(action.element_tv(h)?)
        }
    }
}

/// Every family member at genus `g`, in classification precedence order.
pub fn family_tags(g: u64) -> impl Iterator<Item = FamilyTag> {
    TagKind::ALL
        .into_iter()
        .flat_map(move |kind| (1..=kind.max_exponent(g)).map(move |k| FamilyTag::new(kind, k)))
}

/// Names the hyperelliptic family containing the class of `tv`.
///
/// Precedence is `F1 > F2 > F3 > IF3`, then smallest exponent; several tags
/// can name one class and the first one wins. `Ok(None)` means the class is
/// not hyperelliptic.
pub fn classify_hyperelliptic(tv: &TotalValency) -> Result<Option<FamilyTag>, ValencyError> {
    let g = tv.genus;
    if g < 2 {
        return Err(ValencyError::GenusOutOfRange(g));
    }
    tv.ensure_valid()?;
    for tag in family_tags(g) {
        if tag.family.max_exponent(g) % tv.order != 0 {
            continue;
        }
        if nielsen_equal(tv, &closed_form_tv(tag, g)?) {
            return Ok(Some(tag));
        }
    }
    Ok(None)
}
