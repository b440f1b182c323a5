//! Finite abelian group actions on closed surfaces, encoded by orbifold data.
//!
//! An action of `G` on `Σ_g` with quotient orbifold of genus `h` and cone
//! points of orders `m₁, …, m_s` is determined by the images `φ(xᵢ) ∈ G` of
//! the elliptic generators. The convention is that `φ(xᵢ)` acts at every
//! point above cone `i` as the clockwise `2π/mᵢ` rotation. Every point over
//! cone `i` then has stabilizer `⟨φ(xᵢ)⟩` (the group is abelian), which is
//! all that is needed to read off the total valency of any element.
//!
//! Only `ℤ/n` and `ℤ/n ⊕ ℤ/2` are supported.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd, lcm};
use crate::family::Family;
use crate::valency::{nielsen_equal, TotalValency, Valency, ValencyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("{cones} cone orders but {images} images")]
    LengthMismatch { cones: usize, images: usize },
    #[error("element {0} is not in the group {1}")]
    ElementOutOfRange(Element, AbelianGroup),
    #[error("cone {cone}: image has order {actual}, cone order is {expected}")]
    OrderMismatch { cone: usize, expected: u64, actual: u64 },
    #[error("images generate a subgroup of order {generated} in a group of order {order}")]
    NotSurjective { generated: u64, order: u64 },
    #[error("images sum to {0}, not to the identity")]
    RelationViolated(Element),
    #[error("Riemann-Hurwitz fails: genus {genus}, |G| = {order}, quotient genus {quotient_genus}, cones {cones:?}")]
    RiemannHurwitzFailed { genus: u64, order: u64, quotient_genus: u64, cones: Vec<u64> },
    #[error("the identity has no total valency")]
    IdentityElement,
    #[error("element {0} is not a hyperelliptic involution")]
    NotHyperelliptic(Element),
    #[error("{0} lies in the subgroup generated by the involution; the induced rotation is trivial")]
    DegenerateRotation(Element),
    #[error("cone order must be at least 2, got {0}")]
    TrivialCone(u64),
    #[error("group order must be positive")]
    EmptyGroup,
    #[error(transparent)]
    Valency(#[from] ValencyError),
}

/// `ℤ/n` or `ℤ/n ⊕ ℤ/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbelianGroup {
    Cyclic(u64),
    CyclicTimesTwo(u64),
}

/// Group element as a pair of residues; the second one is always 0 in a
/// cyclic group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element(pub u64, pub u64);

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbelianGroup::Cyclic(n) => write!(f, "Z/{n}"),
            AbelianGroup::CyclicTimesTwo(n) => write!(f, "Z/{n} + Z/2"),
        }
    }
}

impl AbelianGroup {
    fn cyclic_part(&self) -> u64 {
        match *self {
            AbelianGroup::Cyclic(n) | AbelianGroup::CyclicTimesTwo(n) => n,
        }
    }

    fn two_part(&self) -> u64 {
        match self {
            AbelianGroup::Cyclic(_) => 1,
            AbelianGroup::CyclicTimesTwo(_) => 2,
        }
    }

    pub fn order(&self) -> u64 {
        self.cyclic_part() * self.two_part()
    }

    pub fn identity(&self) -> Element {
        Element(0, 0)
    }

    /// Generator of the cyclic factor.
    pub fn generator(&self) -> Element {
        Element(1 % self.cyclic_part(), 0)
    }

    pub fn contains(&self, e: Element) -> bool {
        e.0 < self.cyclic_part() && e.1 < self.two_part()
    }

    pub fn add(&self, a: Element, b: Element) -> Element {
        let n = self.cyclic_part() as u128;
        Element(((a.0 as u128 + b.0 as u128) % n) as u64, (a.1 + b.1) % self.two_part())
    }

    pub fn neg(&self, a: Element) -> Element {
        let n = self.cyclic_part();
        Element((n - a.0 % n) % n, a.1 % self.two_part())
    }

    /// `k·a`.
    pub fn scale(&self, a: Element, k: u64) -> Element {
        let n = self.cyclic_part() as u128;
        Element(((a.0 as u128 * k as u128) % n) as u64, ((a.1 as u128 * k as u128) % self.two_part() as u128) as u64)
    }

    pub fn element_order(&self, a: Element) -> u64 {
        let n = self.cyclic_part();
        let first = n / gcd(a.0, n);
        if a.1 % 2 == 1 {
            lcm(first, 2).expect("order fits")
        } else {
            first
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        let n = self.cyclic_part();
        let t = self.two_part();
        (0..t).flat_map(move |b| (0..n).map(move |a| Element(a, b)))
    }

    /// Smallest `c ≥ 0` with `c·s = h`, if `h ∈ ⟨s⟩`.
    pub fn discrete_log(&self, s: Element, h: Element) -> Option<u64> {
        let n = self.cyclic_part();
        let g = gcd(s.0, n);
        if h.0 % g != 0 {
            return None;
        }
        let first_order = n / g;
        let c0 = if first_order == 1 {
            0
        } else {
            let unit = (s.0 / g) % first_order;
            let inv = crate::arith::mod_inverse(unit, first_order).ok()?;
            ((h.0 / g) as u128 * inv as u128 % first_order as u128) as u64
        };
        let order = self.element_order(s);
        let mut c = c0;
        while c < order {
            if self.scale(s, c) == h {
                return Some(c);
            }
            c += first_order;
        }
        None
    }

    /// Subgroup generated by `gens`, as a sorted set.
    pub fn generated(&self, gens: &[Element]) -> BTreeSet<Element> {
        let mut seen = BTreeSet::from([self.identity()]);
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for &s in gens {
                let y = self.add(x, s);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen
    }
}

/// Unvalidated action data, as read from input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSpec {
    pub group: AbelianGroup,
    pub genus: u64,
    #[serde(default)]
    pub quotient_genus: u64,
    pub cone_orders: Vec<u64>,
    pub images: Vec<Element>,
}

/// A validated surface-kernel action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbifoldAction {
    group: AbelianGroup,
    genus: u64,
    quotient_genus: u64,
    cone_orders: Vec<u64>,
    images: Vec<Element>,
}

pub fn make_action(spec: ActionSpec) -> Result<OrbifoldAction, ActionError> {
    let ActionSpec { group, genus, quotient_genus, cone_orders, images } = spec;
    if group.order() == 0 {
        return Err(ActionError::EmptyGroup);
    }
    if cone_orders.len() != images.len() {
        return Err(ActionError::LengthMismatch { cones: cone_orders.len(), images: images.len() });
    }
    for (i, (&m, &x)) in cone_orders.iter().zip(&images).enumerate() {
        if m < 2 {
            return Err(ActionError::TrivialCone(m));
        }
        if !group.contains(x) {
            return Err(ActionError::ElementOutOfRange(x, group));
        }
        let actual = group.element_order(x);
        if actual != m {
            return Err(ActionError::OrderMismatch { cone: i, expected: m, actual });
        }
    }
    // With positive quotient genus the hyperbolic generators can be sent
    // anywhere, and two elements always suffice to generate these groups.
    if quotient_genus == 0 {
        let generated = group.generated(&images).len() as u64;
        if generated != group.order() {
            return Err(ActionError::NotSurjective { generated, order: group.order() });
        }
    }
    let sum = images.iter().fold(group.identity(), |acc, &x| group.add(acc, x));
    if sum != group.identity() {
        return Err(ActionError::RelationViolated(sum));
    }
    // 2 − 2g = |G|(2 − 2h) − Σ (|G|/mᵢ)(mᵢ − 1)
    let order = group.order() as i128;
    let branching: i128 = cone_orders.iter().map(|&m| (order / m as i128) * (m as i128 - 1)).sum();
    if 2 - 2 * genus as i128 != order * (2 - 2 * quotient_genus as i128) - branching {
        return Err(ActionError::RiemannHurwitzFailed { genus, order: group.order(), quotient_genus, cones: cone_orders });
    }
    Ok(OrbifoldAction { group, genus, quotient_genus, cone_orders, images })
}

impl OrbifoldAction {
    pub fn group(&self) -> AbelianGroup {
        self.group
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn quotient_genus(&self) -> u64 {
        self.quotient_genus
    }

    pub fn cone_orders(&self) -> &[u64] {
        &self.cone_orders
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    /// The cyclic action realising a total valency: cone orders `λᵢ` and
    /// images `θᵢ·n/λᵢ ∈ ℤ/n`.
    pub fn cyclic_from_tv(tv: &TotalValency) -> Result<OrbifoldAction, ActionError> {
        let n = tv.order();
        let (cone_orders, images) = tv
            .valencies()
            .iter()
            .map(|v| (v.lambda(), Element(v.theta() * (n / v.lambda()), 0)))
            .unzip();
        make_action(ActionSpec {
            group: AbelianGroup::Cyclic(n),
            genus: tv.genus(),
            quotient_genus: tv.quotient_genus(),
            cone_orders,
            images,
        })
    }

    /// Total valency of the element `h`.
    ///
    /// Over cone `i` (stabilizer `S = ⟨φ(xᵢ)⟩` of order `m`), the orbit size
    /// of `⟨h⟩` is the least `d` with `d·h ∈ S`; the isotropy order is
    /// `λ = ord(h)/d`, and writing `d·h = c·φ(xᵢ)` the isotropy generator
    /// rotates by `2πc/m = 2π(c·λ/m)/λ`. Each of the `(|G|/m)/d` orbits over
    /// the cone carries valency `(c·λ/m)⁻¹ mod λ`.
    pub fn element_tv(&self, h: Element) -> Result<TotalValency, ActionError> {
        let grp = self.group;
        if !grp.contains(h) {
            return Err(ActionError::ElementOutOfRange(h, grp));
        }
        if h == grp.identity() {
            return Err(ActionError::IdentityElement);
        }
        let order = grp.element_order(h);
        let mut valencies = Vec::new();
        for (&m, &s) in self.cone_orders.iter().zip(&self.images) {
            let (d, c) = (1..=order)
                .find_map(|d| grp.discrete_log(s, grp.scale(h, d)).map(|c| (d, c)))
                .expect("ord(h)·h = 0 lies in every subgroup");
            let lambda = order / d;
            if lambda < 2 {
                continue;
            }
            let nu = (c / (m / lambda)) % lambda;
            let val = Valency::from_rotation(nu, lambda)?;
            let count = (grp.order() / m) / d;
            valencies.extend(std::iter::repeat_n(val, count as usize));
        }
        Ok(TotalValency::with_forced_quotient_genus(self.genus, order, valencies)?)
    }

    /// Total valency of `h`, with the identity mapped to the identity class.
    pub fn element_tv_or_identity(&self, h: Element) -> Result<TotalValency, ActionError> {
        if h == self.group.identity() {
            Ok(TotalValency::identity(self.genus))
        } else {
            self.element_tv(h)
        }
    }

    /// Whether `h` is a hyperelliptic involution: order 2 with `2g + 2`
    /// fixed points.
    pub fn is_hyperelliptic_involution(&self, h: Element) -> Result<bool, ActionError> {
        if h == self.group.identity() || self.group.element_order(h) != 2 {
            return Ok(false);
        }
        Ok(self.element_tv(h)?.multiple_point_count() == 2 * self.genus + 2)
    }

    /// Every non-identity element with its total valency.
    pub fn enumerate(&self) -> Result<Vec<(Element, TotalValency)>, ActionError> {
        self.group
            .elements()
            .filter(|&e| e != self.group.identity())
            .map(|e| Ok((e, self.element_tv(e)?)))
            .collect()
    }

    /// Number of points over cone `i` fixed by `h`.
    fn fixed_over_cone(&self, cone: usize, h: Element) -> u64 {
        let s = self.images[cone];
        if self.group.discrete_log(s, h).is_some() {
            self.group.order() / self.cone_orders[cone]
        } else {
            0
        }
    }
}

/// The three standard models `G₁ = ⟨f₁⟩`, `G₂ = ⟨f₂⟩`, `G₃ = ⟨f₃⟩ ⊕ ⟨I⟩`.
///
/// Images of the elliptic generators:
///
/// * `G₁ = ℤ/(4g+2)`, cones `(4g+2, 2g+1, 2)`, images `(1, 2g, 2g+1)`
/// * `G₂ = ℤ/4g`, cones `(4g, 4g, 2)`, images `(1, 2g−1, 2g)`
/// * `G₃ = ℤ/(2g+2) ⊕ ℤ/2`, cones `(2g+2, 2g+2, 2)`, images
///   `((1,0), (2g+1,1), (0,1))`
///
/// These are the solutions (see the derivation tests) for which the
/// generator `(1, 0)` has the closed-form total valency of `f_i` and the
/// involution is hyperelliptic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StandardModel {
    G1,
    G2,
    G3,
}

impl StandardModel {
    pub const ALL: [StandardModel; 3] = [StandardModel::G1, StandardModel::G2, StandardModel::G3];

    pub fn family(self) -> Family {
        match self {
            StandardModel::G1 => Family::F1,
            StandardModel::G2 => Family::F2,
            StandardModel::G3 => Family::F3,
        }
    }

    pub fn of_family(family: Family) -> Self {
        match family {
            Family::F1 => StandardModel::G1,
            Family::F2 => StandardModel::G2,
            Family::F3 => StandardModel::G3,
        }
    }

    pub fn spec(self, g: u64) -> ActionSpec {
        let (group, cone_orders, images) = match self {
            StandardModel::G1 => (
                AbelianGroup::Cyclic(4 * g + 2),
                vec![4 * g + 2, 2 * g + 1, 2],
                vec![Element(1, 0), Element(2 * g, 0), Element(2 * g + 1, 0)],
            ),
            StandardModel::G2 => (
                AbelianGroup::Cyclic(4 * g),
                vec![4 * g, 4 * g, 2],
                vec![Element(1, 0), Element(2 * g - 1, 0), Element(2 * g, 0)],
            ),
            StandardModel::G3 => (
                AbelianGroup::CyclicTimesTwo(2 * g + 2),
                vec![2 * g + 2, 2 * g + 2, 2],
                vec![Element(1, 0), Element(2 * g + 1, 1), Element(0, 1)],
            ),
        };
        ActionSpec { group, genus: g, quotient_genus: 0, cone_orders, images }
    }

    pub fn action(self, g: u64) -> Result<OrbifoldAction, ActionError> {
        make_action(self.spec(g))
    }

    /// The rotation `f_i`.
    pub fn generator(self) -> Element {
        Element(1, 0)
    }

    /// The hyperelliptic involution `I` of the model.
    pub fn involution(self, g: u64) -> Element {
        match self {
            StandardModel::G1 => Element(2 * g + 1, 0),
            StandardModel::G2 => Element(2 * g, 0),
            StandardModel::G3 => Element(0, 1),
        }
    }
}

impl fmt::Display for StandardModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StandardModel::G1 => "G1",
            StandardModel::G2 => "G2",
            StandardModel::G3 => "G3",
        };
        f.write_str(s)
    }
}

/// The three shapes of a commuting pair `(f, I)`, by how many branch points
/// of `Σ_g/⟨I⟩` the induced rotation fixes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairCase {
    /// Two fixed branch points; maximal quotient `S²(4g, 4g, 2)`.
    #[serde(rename = "i")]
    I,
    /// One fixed branch point; maximal quotient `S²(4g+2, 2g+1, 2)`.
    #[serde(rename = "ii")]
    II,
    /// No fixed branch point; maximal quotient `S²(2g+2, 2g+2, 2)`.
    #[serde(rename = "iii")]
    III,
}

impl fmt::Display for PairCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PairCase::I => "(i)",
            PairCase::II => "(ii)",
            PairCase::III => "(iii)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairAnalysis {
    pub case: PairCase,
    /// Order of `f`.
    pub order: u64,
    /// Order of the rotation induced on `Σ_g/⟨I⟩`.
    pub quotient_order: u64,
    /// Branch points of `Σ_g/⟨I⟩` fixed by the induced rotation.
    pub fixed_branch_points: u64,
}

pub fn pair_case(action: &OrbifoldAction, f: Element, inv: Element) -> Result<PairAnalysis, ActionError> {
    let grp = action.group();
    for e in [f, inv] {
        if !grp.contains(e) {
            return Err(ActionError::ElementOutOfRange(e, grp));
        }
    }
    if !action.is_hyperelliptic_involution(inv)? {
        return Err(ActionError::NotHyperelliptic(inv));
    }
    let order = grp.element_order(f);
    let quotient_order = (1..=order)
        .find(|&m| {
            let x = grp.scale(f, m);
            x == grp.identity() || x == inv
        })
        .expect("ord(f)·f is the identity");
    if quotient_order == 1 {
        return Err(ActionError::DegenerateRotation(f));
    }
    // A branch point of Σ/⟨I⟩ is the image of a fixed point p of I, and the
    // induced rotation fixes it iff f(p) ∈ {p, I(p)} = {p}.
    let fixed_branch_points: u64 = (0..action.cone_orders.len())
        .filter(|&i| action.fixed_over_cone(i, inv) > 0)
        .map(|i| action.fixed_over_cone(i, f))
        .sum();
    let case = match fixed_branch_points {
        0 => PairCase::III,
        1 => PairCase::II,
        2 => PairCase::I,
        _ => return Err(ActionError::DegenerateRotation(f)),
    };
    Ok(PairAnalysis { case, order, quotient_order, fixed_branch_points })
}

/// Orbifold signature: genus of the quotient and its cone orders
/// (descending).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub genus: u64,
    pub cone_orders: Vec<u64>,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.cone_orders.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ");
        match (self.genus, self.cone_orders.is_empty()) {
            (0, false) => write!(f, "S²({body})"),
            (0, true) => write!(f, "S²"),
            (h, true) => write!(f, "Σ_{h}"),
            (h, false) => write!(f, "Σ_{h}({body})"),
        }
    }
}

/// Quotient orbifold of `Σ_g` by the cyclic subgroup generated by `h`.
pub fn quotient_signature(action: &OrbifoldAction, h: Element) -> Result<Signature, ActionError> {
    let tv = action.element_tv_or_identity(h)?;
    Ok(Signature {
        genus: tv.quotient_genus(),
        cone_orders: tv.valencies().iter().map(|v| v.lambda()).collect(),
    })
}

/// A standard model realising a given pair of total valencies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub group: StandardModel,
    /// First element of the model whose class matches.
    pub witness: Element,
    /// Smallest `k` with `f_i^k` in the same class as the witness, if any.
    pub generator_power: Option<u64>,
}

/// Finds which of `G₁`, `G₂`, `G₃` contains an element `h` with
/// `[h] = f_tv` and, when given, `[I·h] = composed_tv`.
pub fn classify_pair(
    g: u64,
    f_tv: &TotalValency,
    composed_tv: Option<&TotalValency>,
) -> Result<Option<PairVerdict>, ActionError> {
    if g < 2 {
        return Err(ValencyError::GenusOutOfRange(g).into());
    }
    for model in StandardModel::ALL {
        let action = model.action(g)?;
        let grp = action.group();
        let inv = model.involution(g);
        let table = action.enumerate()?;
        for (h, tv) in &table {
            if !nielsen_equal(tv, f_tv) {
                continue;
            }
            if let Some(want) = composed_tv {
                if !nielsen_equal(&action.element_tv_or_identity(grp.add(inv, *h))?, want) {
                    continue;
                }
            }
            let n = model.family().rotation_order(g);
            let generator_power = (1..n).find(|&k| {
                let x = grp.scale(model.generator(), k);
                table.iter().any(|(e, t)| *e == x && t == tv)
            });
            return Ok(Some(PairVerdict { group: model, witness: *h, generator_power }));
        }
    }
    Ok(None)
}
