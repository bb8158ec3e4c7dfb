//! Element representations and group laws for the concrete compact groups:
//! the circle, finite cyclic groups, the profinite integers `H = prod Z_p`,
//! the solenoid `C = (R x H)/<u>` with `u = (1, v)`, and finite products,
//! optionally with one finite (possibly non-abelian) factor.

use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::arith::{self, crt, factorize, serialize_big};
use crate::circle::{format_rational, UnitRational};
use crate::error::{Error, Result};
use crate::nonabelian::FiniteFactor;

/// Default exponent carried per prime by a residue tower.
pub const DEFAULT_PRECISION: u32 = 8;

/// Default working prime list: all primes below 100.
pub fn default_primes() -> Vec<u64> {
    arith::primes_below(100)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupDesc {
    Torus,
    Profinite { primes: Vec<u64> },
    Solenoid { primes: Vec<u64> },
    Cyclic { n: u64 },
    Product { factors: Vec<GroupDesc> },
    ProductWithFinite {
        abelian: Box<GroupDesc>,
        finite: FiniteFactor,
    },
}

impl GroupDesc {
    pub fn profinite(primes: Vec<u64>) -> Result<Self> {
        validate_primes(&primes)?;
        Ok(GroupDesc::Profinite { primes })
    }

    pub fn solenoid(primes: Vec<u64>) -> Result<Self> {
        validate_primes(&primes)?;
        Ok(GroupDesc::Solenoid { primes })
    }

    pub fn product(factors: Vec<GroupDesc>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("empty product".into()));
        }
        Ok(GroupDesc::Product { factors })
    }

    pub fn primes(&self) -> Option<&[u64]> {
        match self {
            GroupDesc::Profinite { primes } | GroupDesc::Solenoid { primes } => Some(primes),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            GroupDesc::Torus => "torus",
            GroupDesc::Profinite { .. } => "profinite",
            GroupDesc::Solenoid { .. } => "solenoid",
            GroupDesc::Cyclic { .. } => "cyclic",
            GroupDesc::Product { .. } => "product",
            GroupDesc::ProductWithFinite { .. } => "product_with_finite",
        }
    }
}

/// Checks that a prime list is non-empty, strictly increasing and prime.
pub fn validate_primes(primes: &[u64]) -> Result<()> {
    if primes.is_empty() {
        return Err(Error::InvalidArgument("prime list is empty".into()));
    }
    for w in primes.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidArgument(
                "prime list must be strictly increasing".into(),
            ));
        }
    }
    if let Some(p) = primes.iter().find(|&&p| !arith::is_prime(p)) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    Ok(())
}

/// The scaling constant `k_n = (p_0 ... p_{n-1})^n`; `k_0 = 1`.
pub fn k_sequence(primes: &[u64], n: usize) -> Result<BigInt> {
    if n > primes.len() {
        return Err(Error::IndexOutOfRange {
            index: n,
            available: primes.len(),
        });
    }
    Ok(arith::block_scale(primes, n))
}

/// Finite-precision element of `H`: for each listed prime, a residue mod `p^e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueTower {
    entries: BTreeMap<u64, (BigInt, u32)>,
}

impl ResidueTower {
    pub fn new(entries: impl IntoIterator<Item = (u64, BigInt, u32)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (p, r, e) in entries {
            if !arith::is_prime(p) {
                return Err(Error::InvalidArgument(format!("{p} is not prime")));
            }
            let modulus = num_traits::pow(BigInt::from(p), e as usize);
            map.insert(p, (r.mod_floor(&modulus), e));
        }
        Ok(ResidueTower { entries: map })
    }

    /// Image of the integer `m` at the given primes and uniform exponent.
    pub fn from_integer(m: &BigInt, primes: &[u64], exponent: u32) -> Self {
        let entries = primes.iter().map(|&p| {
            let modulus = num_traits::pow(BigInt::from(p), exponent as usize);
            (p, (m.mod_floor(&modulus), exponent))
        });
        ResidueTower {
            entries: entries.collect(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, &BigInt, u32)> {
        self.entries.iter().map(|(&p, (r, e))| (p, r, *e))
    }

    fn get(&self, p: u64) -> Option<(&BigInt, u32)> {
        self.entries.get(&p).map(|(r, e)| (r, *e))
    }

    fn is_zero(&self) -> bool {
        self.entries.values().all(|(r, _)| r.is_zero())
    }

    /// Entry-wise combination truncated to the shallower exponent. Returns the
    /// tower and whether any entry lost precision.
    fn combine(
        &self,
        other: &ResidueTower,
        f: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<(ResidueTower, bool)> {
        if self.entries.len() != other.entries.len()
            || self.entries.keys().zip(other.entries.keys()).any(|(a, b)| a != b)
        {
            return Err(Error::PrecisionMismatch);
        }
        let mut truncated = false;
        let mut out = BTreeMap::new();
        for (&p, (r1, e1)) in &self.entries {
            let (r2, e2) = other.get(p).unwrap();
            let e = (*e1).min(e2);
            truncated |= *e1 != e2;
            let modulus = num_traits::pow(BigInt::from(p), e as usize);
            out.insert(p, (f(r1, r2).mod_floor(&modulus), e));
        }
        Ok((ResidueTower { entries: out }, truncated))
    }
}

impl Serialize for ResidueTower {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            #[serde(serialize_with = "serialize_big")]
            residue: &'a BigInt,
            exponent: u32,
        }
        let mut map = s.serialize_map(Some(self.entries.len()))?;
        for (p, (r, e)) in &self.entries {
            map.serialize_entry(&p.to_string(), &Entry { residue: r, exponent: *e })?;
        }
        map.end()
    }
}

/// Element of `H = prod_p Z_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProfiniteElem {
    /// `m * v`, an element of the dense cyclic subgroup generated by `v = (1, 1, ...)`.
    IntegerPoint(BigInt),
    Residues(ResidueTower),
}

impl ProfiniteElem {
    pub fn zero() -> Self {
        ProfiniteElem::IntegerPoint(BigInt::zero())
    }

    /// The element `v` whose every coordinate is 1.
    pub fn v() -> Self {
        ProfiniteElem::IntegerPoint(BigInt::one())
    }

    pub fn int(m: impl Into<BigInt>) -> Self {
        ProfiniteElem::IntegerPoint(m.into())
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            ProfiniteElem::IntegerPoint(m) => Some(m),
            ProfiniteElem::Residues(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ProfiniteElem::IntegerPoint(m) => m.is_zero(),
            ProfiniteElem::Residues(t) => t.is_zero(),
        }
    }

    /// Sum, coercing integer points into residues when mixed. The flag reports
    /// truncation to a shallower tower.
    pub fn add_with_flag(&self, other: &Self) -> Result<(Self, bool)> {
        self.zip(other, |a, b| a + b)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_with_flag(other).map(|(x, _)| x)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b).map(|(x, _)| x)
    }

    fn zip(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<(Self, bool)> {
        use ProfiniteElem::*;
        match (self, other) {
            (IntegerPoint(a), IntegerPoint(b)) => Ok((IntegerPoint(f(a, b)), false)),
            (Residues(t), IntegerPoint(m)) => {
                let coerced = coerce_like(m, t);
                t.combine(&coerced, f).map(|(t, fl)| (Residues(t), fl))
            }
            (IntegerPoint(m), Residues(t)) => {
                let coerced = coerce_like(m, t);
                coerced.combine(t, f).map(|(t, fl)| (Residues(t), fl))
            }
            (Residues(a), Residues(b)) => a.combine(b, f).map(|(t, fl)| (Residues(t), fl)),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ProfiniteElem::IntegerPoint(m) => ProfiniteElem::IntegerPoint(-m),
            ProfiniteElem::Residues(t) => {
                let entries = t.entries.iter().map(|(&p, (r, e))| {
                    let modulus = num_traits::pow(BigInt::from(p), *e as usize);
                    (p, ((-r).mod_floor(&modulus), *e))
                });
                ProfiniteElem::Residues(ResidueTower {
                    entries: entries.collect(),
                })
            }
        }
    }

    /// `self + k*v`.
    pub fn shift(&self, k: &BigInt) -> Self {
        match self {
            ProfiniteElem::IntegerPoint(m) => ProfiniteElem::IntegerPoint(m + k),
            ProfiniteElem::Residues(t) => {
                let coerced = coerce_like(k, t);
                ProfiniteElem::Residues(t.combine(&coerced, |a, b| a + b).unwrap().0)
            }
        }
    }
}

fn coerce_like(m: &BigInt, t: &ResidueTower) -> ResidueTower {
    let entries = t.entries.iter().map(|(&p, (_, e))| {
        let modulus = num_traits::pow(BigInt::from(p), *e as usize);
        (p, (m.mod_floor(&modulus), *e))
    });
    ResidueTower {
        entries: entries.collect(),
    }
}

/// Reduction `H -> Z/bZ`.
pub fn residue_mod(h: &ProfiniteElem, b: u64) -> Result<u64> {
    if b == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    match h {
        ProfiniteElem::IntegerPoint(m) => Ok(m.mod_floor(&BigInt::from(b)).to_u64().unwrap()),
        ProfiniteElem::Residues(t) => {
            let mut congruences = Vec::new();
            for (p, e) in factorize(b) {
                let (r, have) = t
                    .get(p)
                    .ok_or(Error::InsufficientPrecision { prime: p, needed: e })?;
                if have < e {
                    return Err(Error::InsufficientPrecision { prime: p, needed: e });
                }
                let pe = p.pow(e);
                congruences.push((r.mod_floor(&BigInt::from(pe)).to_u64().unwrap(), pe));
            }
            Ok(crt(&congruences).0)
        }
    }
}

/// Membership in `W_n = k_n H`: for each `i < n`, `p_i^n` divides the `p_i` coordinate.
pub fn in_wn(h: &ProfiniteElem, primes: &[u64], n: usize) -> Result<bool> {
    if n > primes.len() {
        return Err(Error::IndexOutOfRange {
            index: n,
            available: primes.len(),
        });
    }
    for &p in &primes[..n] {
        match h {
            ProfiniteElem::IntegerPoint(m) => {
                let pn = num_traits::pow(BigInt::from(p), n);
                if !m.is_multiple_of(&pn) {
                    return Ok(false);
                }
            }
            ProfiniteElem::Residues(t) => {
                let (r, have) = t.get(p).ok_or(Error::InsufficientPrecision {
                    prime: p,
                    needed: n as u32,
                })?;
                if (have as usize) < n {
                    return Err(Error::InsufficientPrecision {
                        prime: p,
                        needed: n as u32,
                    });
                }
                let pn = num_traits::pow(BigInt::from(p), n);
                if !r.is_multiple_of(&pn) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Point `pi(r, h)` of the solenoid. Integer profinite parts are folded into the
/// real coordinate, so stored points with an integer `h` always have `h = 0`.
#[derive(Clone, Debug)]
pub struct SolenoidPoint {
    r: BigRational,
    h: ProfiniteElem,
}

impl SolenoidPoint {
    pub fn new(r: BigRational, h: ProfiniteElem) -> Self {
        match h {
            ProfiniteElem::IntegerPoint(m) => SolenoidPoint {
                r: r - BigRational::from_integer(m),
                h: ProfiniteElem::zero(),
            },
            h => SolenoidPoint { r, h },
        }
    }

    /// `pi(r, 0)`, a point of the arc component.
    pub fn real(r: BigRational) -> Self {
        SolenoidPoint {
            r,
            h: ProfiniteElem::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::real(BigRational::zero())
    }

    pub fn r(&self) -> &BigRational {
        &self.r
    }

    pub fn h(&self) -> &ProfiniteElem {
        &self.h
    }

    /// Whether the point lies in `pi(R x {0})`.
    pub fn arc_flag(&self) -> bool {
        matches!(&self.h, ProfiniteElem::IntegerPoint(m) if m.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(&self.r + &other.r, self.h.add(&other.h)?))
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.r, self.h.neg())
    }
}

/// Points with an exact (integer) profinite part compare by their real
/// coordinate. Points carrying a finite-precision residue tower compare only
/// with other tower points: a tower known mod `p^e` agrees with many distinct
/// integers, so mixing the two forms would not be transitive.
impl PartialEq for SolenoidPoint {
    fn eq(&self, other: &Self) -> bool {
        match (&self.h, &other.h) {
            (ProfiniteElem::IntegerPoint(_), ProfiniteElem::IntegerPoint(_)) => self.r == other.r,
            (ProfiniteElem::Residues(_), ProfiniteElem::Residues(_)) => {
                let d = &self.r - &other.r;
                if !d.is_integer() {
                    return false;
                }
                // (r1, h1) - (r2, h2) = k*u  iff  r1 - r2 = k and h1 - h2 = k*v
                match self.h.sub(&other.h) {
                    Ok(diff) => diff.shift(&-d.to_integer()).is_zero(),
                    Err(_) => false,
                }
            }
            _ => false,
        }
    }
}

impl Eq for SolenoidPoint {}

impl Hash for SolenoidPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.h {
            ProfiniteElem::IntegerPoint(_) => {
                0u8.hash(state);
                self.r.hash(state);
            }
            ProfiniteElem::Residues(_) => {
                // equal tower points differ by an integer in r
                1u8.hash(state);
                (&self.r - self.r.floor()).hash(state);
            }
        }
    }
}

impl Serialize for SolenoidPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("r", &format_rational(&self.r))?;
        map.serialize_entry("h", &ProfiniteRepr(&self.h))?;
        map.end()
    }
}

struct ProfiniteRepr<'a>(&'a ProfiniteElem);

impl Serialize for ProfiniteRepr<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            ProfiniteElem::IntegerPoint(m) => Repr::IntPoint(m).serialize(s),
            ProfiniteElem::Residues(t) => Repr::Residues(t).serialize(s),
        }
    }
}

/// Element of any supported group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Torus(UnitRational),
    Cyclic(u64),
    Profinite(ProfiniteElem),
    Solenoid(SolenoidPoint),
    /// Index into the element list of a finite group.
    Finite(usize),
    Tuple(Vec<Element>),
}

#[derive(Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
enum Repr<'a> {
    Torus(&'a UnitRational),
    Cyclic(u64),
    IntPoint(#[serde(serialize_with = "serialize_big")] &'a BigInt),
    Residues(&'a ResidueTower),
    Solenoid(&'a SolenoidPoint),
    Finite(usize),
    Tuple(&'a [Element]),
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Element::Torus(x) => Repr::Torus(x).serialize(s),
            Element::Cyclic(c) => Repr::Cyclic(*c).serialize(s),
            Element::Profinite(h) => ProfiniteRepr(h).serialize(s),
            Element::Solenoid(p) => Repr::Solenoid(p).serialize(s),
            Element::Finite(i) => Repr::Finite(*i).serialize(s),
            Element::Tuple(xs) => Repr::Tuple(xs).serialize(s),
        }
    }
}

impl Element {
    pub fn torus(x: UnitRational) -> Self {
        Element::Torus(x)
    }

    pub fn int_point(m: impl Into<BigInt>) -> Self {
        Element::Profinite(ProfiniteElem::int(m))
    }

    pub fn solenoid_real(r: BigRational) -> Self {
        Element::Solenoid(SolenoidPoint::real(r))
    }

    pub fn as_tuple(&self) -> Option<&[Element]> {
        match self {
            Element::Tuple(xs) => Some(xs),
            _ => None,
        }
    }

    /// Membership in the arc component for the groups where it is decidable here.
    pub fn arc_flag(&self) -> bool {
        match self {
            Element::Torus(_) => true,
            Element::Cyclic(c) => *c == 0,
            Element::Profinite(h) => h.is_zero(),
            Element::Solenoid(p) => p.arc_flag(),
            Element::Finite(_) => false,
            Element::Tuple(xs) => xs.iter().all(Element::arc_flag),
        }
    }
}

fn mismatch(g: &GroupDesc, x: &Element) -> Error {
    Error::KindMismatch(format!("element {x:?} is not in {} group", g.kind_name()))
}

/// Checks that `x` has the shape of an element of `g`.
pub fn check_element(g: &GroupDesc, x: &Element) -> Result<()> {
    match (g, x) {
        (GroupDesc::Torus, Element::Torus(_)) => Ok(()),
        (GroupDesc::Cyclic { n }, Element::Cyclic(c)) if c < n => Ok(()),
        (GroupDesc::Profinite { .. }, Element::Profinite(_)) => Ok(()),
        (GroupDesc::Solenoid { .. }, Element::Solenoid(_)) => Ok(()),
        (GroupDesc::Product { factors }, Element::Tuple(xs)) if xs.len() == factors.len() => {
            factors.iter().zip(xs).try_for_each(|(f, x)| check_element(f, x))
        }
        (GroupDesc::ProductWithFinite { abelian, finite }, Element::Tuple(xs)) => match xs.as_slice() {
            [a, Element::Finite(i)] if *i < finite.group().order() => check_element(abelian, a),
            _ => Err(mismatch(g, x)),
        },
        _ => Err(mismatch(g, x)),
    }
}

pub fn group_zero(g: &GroupDesc) -> Element {
    match g {
        GroupDesc::Torus => Element::Torus(UnitRational::ZERO),
        GroupDesc::Cyclic { .. } => Element::Cyclic(0),
        GroupDesc::Profinite { .. } => Element::Profinite(ProfiniteElem::zero()),
        GroupDesc::Solenoid { .. } => Element::Solenoid(SolenoidPoint::zero()),
        GroupDesc::Product { factors } => Element::Tuple(factors.iter().map(group_zero).collect()),
        GroupDesc::ProductWithFinite { abelian, finite } => {
            Element::Tuple(vec![group_zero(abelian), Element::Finite(finite.group().identity())])
        }
    }
}

pub fn group_add(g: &GroupDesc, x: &Element, y: &Element) -> Result<Element> {
    match (g, x, y) {
        (GroupDesc::Torus, Element::Torus(a), Element::Torus(b)) => Ok(Element::Torus(a.add(*b))),
        (GroupDesc::Cyclic { n }, Element::Cyclic(a), Element::Cyclic(b)) => {
            Ok(Element::Cyclic(((*a as u128 + *b as u128) % *n as u128) as u64))
        }
        (GroupDesc::Profinite { .. }, Element::Profinite(a), Element::Profinite(b)) => {
            a.add(b).map(Element::Profinite)
        }
        (GroupDesc::Solenoid { .. }, Element::Solenoid(a), Element::Solenoid(b)) => {
            a.add(b).map(Element::Solenoid)
        }
        (GroupDesc::Product { factors }, Element::Tuple(xs), Element::Tuple(ys))
            if xs.len() == factors.len() && ys.len() == factors.len() =>
        {
            let coords = factors
                .iter()
                .zip(xs.iter().zip(ys))
                .map(|(f, (a, b))| group_add(f, a, b))
                .collect::<Result<Vec<_>>>()?;
            Ok(Element::Tuple(coords))
        }
        (GroupDesc::ProductWithFinite { abelian, finite }, Element::Tuple(xs), Element::Tuple(ys)) => {
            match (xs.as_slice(), ys.as_slice()) {
                ([a, Element::Finite(i)], [b, Element::Finite(j)]) => Ok(Element::Tuple(vec![
                    group_add(abelian, a, b)?,
                    Element::Finite(finite.group().mul(*i, *j)),
                ])),
                _ => Err(mismatch(g, x)),
            }
        }
        _ => Err(mismatch(g, if check_element(g, x).is_ok() { y } else { x })),
    }
}

pub fn group_neg(g: &GroupDesc, x: &Element) -> Result<Element> {
    match (g, x) {
        (GroupDesc::Torus, Element::Torus(a)) => Ok(Element::Torus(a.neg())),
        (GroupDesc::Cyclic { n }, Element::Cyclic(a)) => Ok(Element::Cyclic((n - a % n) % n)),
        (GroupDesc::Profinite { .. }, Element::Profinite(a)) => Ok(Element::Profinite(a.neg())),
        (GroupDesc::Solenoid { .. }, Element::Solenoid(a)) => Ok(Element::Solenoid(a.neg())),
        (GroupDesc::Product { factors }, Element::Tuple(xs)) if xs.len() == factors.len() => {
            let coords = factors
                .iter()
                .zip(xs)
                .map(|(f, a)| group_neg(f, a))
                .collect::<Result<Vec<_>>>()?;
            Ok(Element::Tuple(coords))
        }
        (GroupDesc::ProductWithFinite { abelian, finite }, Element::Tuple(xs)) => match xs.as_slice() {
            [a, Element::Finite(i)] => Ok(Element::Tuple(vec![
                group_neg(abelian, a)?,
                Element::Finite(finite.group().inverse(*i)),
            ])),
            _ => Err(mismatch(g, x)),
        },
        _ => Err(mismatch(g, x)),
    }
}
