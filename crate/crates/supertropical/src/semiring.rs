//! Supertropical scalar arithmetic and the symmetrized pair layer.
//!
//! A scalar is either the additive zero `−∞`, a *tangible* rational, or a
//! *ghost* rational. Values are kept in logarithmic notation: multiplication
//! adds values, the multiplicative unit `𝟙` is `Tangible(0)`, and the
//! additive unit `𝟘` is `Zero`. Addition returns the ν-larger argument and
//! turns a ν-tie into the common ghost; ghosts are how the algebra remembers
//! that a maximum was attained twice.
//!
//! The ghost map ν projects a scalar onto its ghost copy. Scalars are
//! compared either exactly (`==`) or through ν (`nu_cmp` and friends), and
//! the central relation `a ⊨ b` ("a ghost-surpasses b") means `a = b + g`
//! for some ghost-or-zero `g`.
//!
//! [`SymPair`] is the symmetrized semiring: pairs `(pos, neg)` with a
//! twisted product, used by the bideterminant machinery.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_rational::Ratio;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational log-value. `i128` components keep desk-scale chains of
/// products far away from overflow while staying allocation-free.
pub type Rat = Ratio<i128>;

/// Build a rational from a numerator/denominator pair.
pub fn rat(numer: i128, denom: i128) -> Rat {
    Ratio::new(numer, denom)
}

/// Midpoint of two rationals; the constructive witness that the value set is
/// dense (strictly between any two distinct log-values).
pub fn midpoint(a: Rat, b: Rat) -> Rat {
    (a + b) / Rat::from_integer(2)
}

/// A supertropical scalar in logarithmic notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TropElem {
    /// The additive unit `𝟘 = −∞`.
    Zero,
    /// An ordinary (invertible) max-plus value.
    Tangible(Rat),
    /// A ghost value: the image of a tangible under ν, recording a tie.
    Ghost(Rat),
}

pub use TropElem::{Ghost, Tangible, Zero};

impl TropElem {
    /// The additive unit `𝟘`.
    pub const fn zero() -> Self {
        Zero
    }

    /// The multiplicative unit `𝟙 = Tangible(0)`.
    pub fn one() -> Self {
        Tangible(Rat::from_integer(0))
    }

    /// Tangible scalar with integer log-value.
    pub fn t(v: i128) -> Self {
        Tangible(Rat::from_integer(v))
    }

    /// Ghost scalar with integer log-value.
    pub fn g(v: i128) -> Self {
        Ghost(Rat::from_integer(v))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Zero)
    }

    pub fn is_tangible(&self) -> bool {
        matches!(self, Tangible(_))
    }

    pub fn is_ghost(&self) -> bool {
        matches!(self, Ghost(_))
    }

    /// Membership in `𝒢₀`, the ghost ideal together with `𝟘`.
    pub fn is_ghost_or_zero(&self) -> bool {
        !self.is_tangible()
    }

    /// The rational log-value, if any.
    pub fn value(&self) -> Option<Rat> {
        match self {
            Zero => None,
            Tangible(v) | Ghost(v) => Some(*v),
        }
    }

    /// The ghost map ν: tangibles and ghosts fall onto the ghost copy,
    /// `𝟘` stays put. Idempotent.
    pub fn nu(&self) -> TropElem {
        match self {
            Zero => Zero,
            Tangible(v) | Ghost(v) => Ghost(*v),
        }
    }

    /// Compare by ν-value, with `𝟘` strictly below every finite value.
    pub fn nu_cmp(&self, other: &TropElem) -> Ordering {
        match (self.value(), other.value()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp(&b),
        }
    }

    pub fn nu_eq(&self, other: &TropElem) -> bool {
        self.nu_cmp(other) == Ordering::Equal
    }

    pub fn nu_lt(&self, other: &TropElem) -> bool {
        self.nu_cmp(other) == Ordering::Less
    }

    pub fn nu_le(&self, other: &TropElem) -> bool {
        self.nu_cmp(other) != Ordering::Greater
    }

    pub fn nu_gt(&self, other: &TropElem) -> bool {
        self.nu_cmp(other) == Ordering::Greater
    }

    pub fn nu_ge(&self, other: &TropElem) -> bool {
        self.nu_cmp(other) != Ordering::Less
    }

    /// Multiplicative inverse: negate the log-value, keep the variant.
    ///
    /// Inverting a ghost is an extension beyond the tangible semifield
    /// (chosen ν-compatibly: `inv(a)·a` is `𝟙` up to ghostness); it is what
    /// lets singularizing witnesses divide by ghost entries.
    pub fn inv(&self) -> Result<TropElem> {
        match self {
            Zero => Err(Error::domain("cannot invert the additive zero −∞")),
            Tangible(v) => Ok(Tangible(-v)),
            Ghost(v) => Ok(Ghost(-v)),
        }
    }

    /// Exact square root: halve the log-value, keep the variant.
    pub fn sqrt(&self) -> TropElem {
        match self {
            Zero => Zero,
            Tangible(v) => Tangible(v / 2),
            Ghost(v) => Ghost(v / 2),
        }
    }

    /// Ghost surpassing `self ⊨ other`: `self = other + g` for some ghost or
    /// zero `g`.
    ///
    /// Closed form (established by exhaustive case analysis over the nine
    /// variant pairs, and cross-checked against the existential definition in
    /// the unit tests): `a ⊨ b` iff `a = b`, or `a` is ghost with
    /// `ν(a) ≥ ν(b)`. On tangible `a` the relation collapses to equality.
    pub fn ghost_surpass(&self, other: &TropElem) -> bool {
        self == other || (self.is_ghost() && self.nu_ge(other))
    }
}

impl Add for TropElem {
    type Output = TropElem;

    fn add(self, rhs: TropElem) -> TropElem {
        match self.nu_cmp(&rhs) {
            Ordering::Greater => self,
            Ordering::Less => rhs,
            Ordering::Equal => match (self, rhs) {
                (Zero, Zero) => Zero,
                // A ν-tie of present values always produces the common ghost,
                // even when both arguments are the same tangible.
                (a, b) => {
                    debug_assert_eq!(a.value(), b.value());
                    a.nu()
                }
            },
        }
    }
}

impl Mul for TropElem {
    type Output = TropElem;

    fn mul(self, rhs: TropElem) -> TropElem {
        match (self, rhs) {
            (Zero, _) | (_, Zero) => Zero,
            (Tangible(a), Tangible(b)) => Tangible(a + b),
            (Tangible(a), Ghost(b)) | (Ghost(a), Tangible(b)) | (Ghost(a), Ghost(b)) => {
                Ghost(a + b)
            }
        }
    }
}

impl Sum for TropElem {
    fn sum<I: Iterator<Item = TropElem>>(iter: I) -> TropElem {
        iter.fold(Zero, Add::add)
    }
}

impl Product for TropElem {
    fn product<I: Iterator<Item = TropElem>>(iter: I) -> TropElem {
        iter.fold(TropElem::one(), Mul::mul)
    }
}

fn fmt_rat(v: &Rat, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if *v.denom() == 1 {
        write!(f, "{}", v.numer())
    } else {
        write!(f, "{}/{}", v.numer(), v.denom())
    }
}

impl fmt::Display for TropElem {
    /// Token grammar shared by every textual interface: `_` for `𝟘`, the
    /// plain rational for tangibles, a trailing `v` for ghosts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Zero => write!(f, "_"),
            Tangible(v) => fmt_rat(v, f),
            Ghost(v) => {
                fmt_rat(v, f)?;
                write!(f, "v")
            }
        }
    }
}

/// Parse an exact rational literal: integer (`-3`), fraction (`5/2`), or
/// terminating decimal (`2.5`, kept exact as `5/2`).
fn parse_rat(s: &str) -> Option<Rat> {
    if s.is_empty() {
        return None;
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || frac_part.contains(['-', '+', '/']) {
            return None;
        }
        let negative = int_part.starts_with('-');
        let whole: i128 = if int_part == "-" { 0 } else { int_part.parse().ok()? };
        let digits: i128 = frac_part.parse().ok()?;
        let scale = 10_i128.checked_pow(frac_part.len() as u32)?;
        let magnitude = Rat::from_integer(whole.abs()) + rat(digits, scale);
        return Some(if negative { -magnitude } else { magnitude });
    }
    if let Some((n, d)) = s.split_once('/') {
        let numer: i128 = n.parse().ok()?;
        let denom: i128 = d.parse().ok()?;
        if denom == 0 {
            return None;
        }
        return Some(rat(numer, denom));
    }
    s.parse::<i128>().ok().map(Rat::from_integer)
}

impl FromStr for TropElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<TropElem> {
        let s = s.trim();
        if s == "_" || s == "-inf" {
            return Ok(Zero);
        }
        let (body, ghost) = match s.strip_suffix('v') {
            Some(body) => (body, true),
            None => (s, false),
        };
        let value = parse_rat(body).ok_or_else(|| {
            Error::domain(format!(
                "invalid scalar token {s:?}: expected `_`, `-inf`, a rational \
                 like `3`, `-1`, `5/2`, or a ghost like `5v`"
            ))
        })?;
        Ok(if ghost { Ghost(value) } else { Tangible(value) })
    }
}

impl Serialize for TropElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TropElem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct TokenVisitor;
        impl Visitor<'_> for TokenVisitor {
            type Value = TropElem;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a supertropical scalar token")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<TropElem, E> {
                s.parse().map_err(|e| E::custom(format!("{e}")))
            }
        }
        deserializer.deserialize_str(TokenVisitor)
    }
}

/// An element of the symmetrized semiring: a `(pos, neg)` pair of scalars.
///
/// Addition is componentwise and multiplication is twisted, so that `pos`
/// collects same-sign contributions and `neg` the mixed ones. The pair
/// collapses back to the base semiring by adding its halves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymPair {
    pub pos: TropElem,
    pub neg: TropElem,
}

impl SymPair {
    pub fn new(pos: TropElem, neg: TropElem) -> Self {
        SymPair { pos, neg }
    }

    /// Embed a base scalar on the positive side.
    pub fn from_elem(a: TropElem) -> Self {
        SymPair { pos: a, neg: Zero }
    }

    pub fn zero() -> Self {
        SymPair { pos: Zero, neg: Zero }
    }

    pub fn one() -> Self {
        SymPair { pos: TropElem::one(), neg: Zero }
    }

    /// Collapse back to the base semiring: `pos + neg`. This is a semiring
    /// homomorphism (checked by the property suite).
    pub fn collapse(&self) -> TropElem {
        self.pos + self.neg
    }

    /// Membership in the balance ideal: the two halves are ν-equal.
    pub fn in_circ(&self) -> bool {
        self.pos.nu_eq(&self.neg)
    }

    /// Symmetrized surpassing `self ≽∘ other`: there is a pair `(c₁, c₂)`
    /// with `ν(c₁) = ν(c₂)` such that `self = other + (c₁, c₂)`.
    ///
    /// Implemented by intersecting, over the two slots, the sets of ν-values
    /// γ a correcting scalar may take; the slot-wise feasible sets have the
    /// closed forms computed in `slot_feasible`. Cross-checked against a
    /// finite-candidate existential search in the unit tests.
    pub fn sym_surpass(&self, other: &SymPair) -> bool {
        let a = slot_feasible(&self.pos, &other.pos);
        let b = slot_feasible(&self.neg, &other.neg);
        feasible_intersects(&a, &b)
    }
}

/// The set of ν-values γ for which some scalar `c` with `ν(c) = γ` satisfies
/// `p = q + c`, described as: may `c` be `𝟘`; an open ray `γ < lt`; a single
/// admissible point `γ = eq`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Feasible {
    zero: bool,
    lt: Option<Rat>,
    eq: Option<Rat>,
}

const EMPTY: Feasible = Feasible { zero: false, lt: None, eq: None };

fn slot_feasible(p: &TropElem, q: &TropElem) -> Feasible {
    if p == q {
        // c may vanish, sit strictly below q, or (when q is ghost) tie it.
        return Feasible {
            zero: true,
            lt: q.value(),
            eq: if q.is_ghost() { q.value() } else { None },
        };
    }
    match p.nu_cmp(q) {
        // c must dominate q, which forces c = p exactly.
        Ordering::Greater => Feasible { zero: false, lt: None, eq: p.value() },
        // A ν-tie can only turn a tangible q into the matching ghost p.
        Ordering::Equal if p.is_ghost() => Feasible { zero: false, lt: None, eq: p.value() },
        _ => EMPTY,
    }
}

fn feasible_intersects(a: &Feasible, b: &Feasible) -> bool {
    if a.zero && b.zero {
        return true;
    }
    // Two open rays always share a rational (values are unbounded below).
    if a.lt.is_some() && b.lt.is_some() {
        return true;
    }
    let point_in = |p: Rat, s: &Feasible| s.lt.is_some_and(|b| p < b) || s.eq == Some(p);
    a.eq.is_some_and(|p| point_in(p, b)) || b.eq.is_some_and(|p| point_in(p, a))
}

impl Add for SymPair {
    type Output = SymPair;

    fn add(self, rhs: SymPair) -> SymPair {
        SymPair { pos: self.pos + rhs.pos, neg: self.neg + rhs.neg }
    }
}

impl Mul for SymPair {
    type Output = SymPair;

    /// Twisted product: `(p₁q₁ + p₂q₂, p₁q₂ + p₂q₁)`.
    fn mul(self, rhs: SymPair) -> SymPair {
        SymPair {
            pos: self.pos * rhs.pos + self.neg * rhs.neg,
            neg: self.pos * rhs.neg + self.neg * rhs.pos,
        }
    }
}

impl fmt::Display for SymPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.pos, self.neg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: i128) -> TropElem {
        TropElem::t(v)
    }
    fn g(v: i128) -> TropElem {
        TropElem::g(v)
    }

    #[test]
    fn addition_rule() {
        assert_eq!(t(3) + t(3), g(3));
        assert_eq!(t(5) + Zero, t(5));
        assert_eq!(Zero + t(5), t(5));
        assert_eq!(t(2) + g(2), g(2));
        assert_eq!(g(2) + t(2), g(2));
        assert_eq!(t(4) + t(1), t(4));
        assert_eq!(g(1) + t(4), t(4));
        assert_eq!(g(7) + g(7), g(7));
        assert_eq!(Zero + Zero, Zero);
    }

    #[test]
    fn multiplication_inverse_sqrt() {
        assert_eq!(t(3) * g(-1), g(2));
        assert_eq!(g(3) * g(4), g(7));
        assert_eq!(t(3) * t(4), t(7));
        assert_eq!(Zero * g(9), Zero);
        assert_eq!(t(5).inv().unwrap(), t(-5));
        assert_eq!(g(5).inv().unwrap(), g(-5));
        assert!(Zero.inv().is_err());
        assert_eq!(t(7).sqrt(), Tangible(rat(7, 2)));
        assert_eq!(g(-3).sqrt(), Ghost(rat(-3, 2)));
        assert_eq!(Zero.sqrt(), Zero);
    }

    #[test]
    fn units() {
        for a in [Zero, t(-2), t(0), g(5)] {
            assert_eq!(a + TropElem::zero(), a);
            assert_eq!(a * TropElem::one(), a);
        }
    }

    /// Existential reference for `⊨`: search a finite candidate set of ghosts
    /// that provably suffices (values of both arguments, below both, above
    /// both, in between) together with `𝟘`.
    fn surpass_oracle(a: &TropElem, b: &TropElem) -> bool {
        let mut candidates = vec![Zero];
        let mut vals: Vec<Rat> = [a.value(), b.value()].iter().flatten().copied().collect();
        if let (Some(x), Some(y)) = (a.value(), b.value()) {
            vals.push(midpoint(x, y));
        }
        for v in &vals {
            candidates.push(Ghost(*v));
            candidates.push(Ghost(v + Rat::from_integer(1)));
            candidates.push(Ghost(v - Rat::from_integer(1)));
        }
        candidates.iter().any(|gh| *b + *gh == *a)
    }

    #[test]
    fn ghost_surpass_closed_form_matches_existential() {
        let grid: Vec<TropElem> = {
            let mut v = vec![Zero];
            for x in -3..=3 {
                v.push(t(x));
                v.push(g(x));
            }
            v
        };
        for a in &grid {
            for b in &grid {
                assert_eq!(
                    a.ghost_surpass(b),
                    surpass_oracle(a, b),
                    "mismatch for {a} ⊨ {b}"
                );
            }
        }
    }

    #[test]
    fn ghost_surpass_examples() {
        assert!(g(4).ghost_surpass(&t(3)));
        assert!(t(3).ghost_surpass(&t(3)));
        assert!(!t(4).ghost_surpass(&t(3)));
        assert!(g(0).ghost_surpass(&Zero));
        assert!(Zero.ghost_surpass(&Zero));
        assert!(!Zero.ghost_surpass(&g(0)));
        assert!(g(3).ghost_surpass(&g(1)));
        assert!(!g(1).ghost_surpass(&g(3)));
    }

    #[test]
    fn sym_mul_examples() {
        let p = |a, b| SymPair::new(a, b);
        assert_eq!(p(t(1), Zero) * p(t(2), Zero), p(t(3), Zero));
        assert_eq!(p(t(1), t(1)) * p(t(0), Zero), p(t(1), t(1)));
        assert_eq!(p(t(2), t(0)) * p(t(0), t(2)), p(g(2), t(4)));
    }

    /// Existential reference for `≽∘` over a finite candidate set of
    /// correcting pairs.
    fn sym_surpass_oracle(p: &SymPair, q: &SymPair) -> bool {
        let mut gammas: Vec<Rat> = Vec::new();
        for e in [p.pos, p.neg, q.pos, q.neg] {
            if let Some(v) = e.value() {
                gammas.push(v);
                gammas.push(v + Rat::from_integer(1));
            }
        }
        let low = gammas.iter().min().copied().unwrap_or_default() - Rat::from_integer(1);
        gammas.push(low);
        let mut candidates = vec![(Zero, Zero)];
        for gm in &gammas {
            for c1 in [Tangible(*gm), Ghost(*gm)] {
                for c2 in [Tangible(*gm), Ghost(*gm)] {
                    candidates.push((c1, c2));
                }
            }
        }
        candidates
            .iter()
            .any(|(c1, c2)| q.pos + *c1 == p.pos && q.neg + *c2 == p.neg)
    }

    #[test]
    fn sym_surpass_closed_form_matches_existential() {
        let scalars: Vec<TropElem> = {
            let mut v = vec![Zero];
            for x in -2..=2 {
                v.push(t(x));
                v.push(g(x));
            }
            v
        };
        for &a in &scalars {
            for &b in &scalars {
                for &c in &scalars {
                    for &d in &scalars {
                        let p = SymPair::new(a, b);
                        let q = SymPair::new(c, d);
                        assert_eq!(
                            p.sym_surpass(&q),
                            sym_surpass_oracle(&p, &q),
                            "mismatch for {p} ≽∘ {q}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn sym_surpass_examples() {
        let p = SymPair::new(t(1), t(2));
        assert!(p.sym_surpass(&p));
        assert!(SymPair::new(g(5), g(5)).sym_surpass(&SymPair::new(t(1), t(2))));
        assert!(!SymPair::new(t(9), t(1)).sym_surpass(&SymPair::new(t(1), t(1))));
    }

    #[test]
    fn parse_print_round_trip() {
        for tok in ["_", "3", "-1", "5/2", "5v", "0v", "-7/3v", "1/2"] {
            let e: TropElem = tok.parse().unwrap();
            assert_eq!(e.to_string(), tok);
        }
        assert_eq!("-inf".parse::<TropElem>().unwrap(), Zero);
        assert_eq!("2.5".parse::<TropElem>().unwrap(), Tangible(rat(5, 2)));
        assert_eq!("-0.25v".parse::<TropElem>().unwrap(), Ghost(rat(-1, 4)));
        assert!("abc".parse::<TropElem>().is_err());
        assert!("1/0".parse::<TropElem>().is_err());
        assert!("".parse::<TropElem>().is_err());
    }

    #[test]
    fn collapse_is_multiplicative_on_grid() {
        let scalars: Vec<TropElem> = {
            let mut v = vec![Zero];
            for x in -2..=2 {
                v.push(t(x));
                v.push(g(x));
            }
            v
        };
        for &a in &scalars {
            for &b in &scalars {
                for &c in &scalars {
                    for &d in &scalars {
                        let p = SymPair::new(a, b);
                        let q = SymPair::new(c, d);
                        assert_eq!((p * q).collapse(), p.collapse() * q.collapse());
                    }
                }
            }
        }
    }
}
