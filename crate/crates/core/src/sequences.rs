//! Finite truncations of the explicit convergent sequences: the circle sequence
//! `phi(1/(2n))`, the profinite sequence `{m k_n v : 1 <= m <= k_{n+1}}`, the
//! solenoid sequence `S' u S''` inside the arc component, fans over finite
//! products, and images under quotient maps.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::circle::{phi, UnitRational};
use crate::duality::{trivial_char, Character, SolenoidChar};
use crate::error::{Error, Result};
use crate::groups::{group_zero, k_sequence, validate_primes, Element, GroupDesc, SolenoidPoint};
use crate::nonabelian::FiniteFactor;

/// Upper limit on the number of members a generator will materialize.
pub const MEMBER_LIMIT: u64 = 2_000_000;

/// Generator name and parameters, recorded in every output for reproducibility.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "generator", content = "params", rename_all = "snake_case")]
pub enum SeqSpec {
    Torus {
        #[serde(rename = "N")]
        n: u64,
    },
    Profinite {
        primes: Vec<u64>,
        n_max: usize,
        m_cap: Option<u64>,
    },
    Solenoid {
        primes: Vec<u64>,
        n_max: usize,
        #[serde(rename = "N")]
        n: u64,
        m_cap: Option<u64>,
    },
    Fan {
        parts: Vec<SeqSpec>,
    },
    Pushforward {
        source: Box<SeqSpec>,
        map: QuotientMap,
    },
    WithFiniteFactor {
        base: Box<SeqSpec>,
        finite: String,
    },
    Explicit {
        members: Vec<Element>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum QuotientMap {
    /// `pi(r, h) -> phi(r)`, the quotient by `pi({0} x H)`.
    SolenoidToTorus,
    ProductProjection(usize),
    DropFiniteFactor,
}

/// Where a member came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MemberMeta {
    /// `phi(1/(2n))`.
    Torus { n: u64 },
    /// `m k_n v`.
    Block { n: usize, m: u64 },
    /// Image `pi(-m k_n, 0) = pi(0, m k_n v)` of a block member.
    SPrime { n: usize, m: u64 },
    /// `pi(1/(2n), 0)`.
    SDoublePrime { n: u64 },
    Component { index: usize, inner: Box<MemberMeta> },
    Image { inner: Box<MemberMeta> },
    Explicit { index: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Member {
    pub value: Element,
    pub meta: Vec<MemberMeta>,
    pub arc: bool,
}

/// A truncated super-sequence: distinct members, none equal to the limit, in a
/// fixed order.
#[derive(Clone, Debug)]
pub struct SuperSeq {
    group: GroupDesc,
    spec: SeqSpec,
    limit: Element,
    members: Vec<Member>,
    index: HashMap<Element, usize>,
    parts: Vec<SuperSeq>,
}

impl SuperSeq {
    fn assemble(
        group: GroupDesc,
        spec: SeqSpec,
        limit: Element,
        items: impl IntoIterator<Item = (Element, MemberMeta)>,
    ) -> Self {
        let mut members: Vec<Member> = Vec::new();
        let mut index: HashMap<Element, usize> = HashMap::new();
        for (value, meta) in items {
            if value == limit {
                continue;
            }
            match index.get(&value) {
                Some(&i) => members[i].meta.push(meta),
                None => {
                    index.insert(value.clone(), members.len());
                    let arc = value.arc_flag();
                    members.push(Member {
                        value,
                        meta: vec![meta],
                        arc,
                    });
                }
            }
        }
        SuperSeq {
            group,
            spec,
            limit,
            members,
            index,
            parts: Vec::new(),
        }
    }

    /// A finite set presented as a sequence converging to zero (no convergence claim).
    pub fn explicit(group: GroupDesc, values: Vec<Element>) -> Result<Self> {
        for v in &values {
            crate::groups::check_element(&group, v)?;
        }
        let limit = group_zero(&group);
        let spec = SeqSpec::Explicit { members: values.clone() };
        let items = values
            .into_iter()
            .enumerate()
            .map(|(index, v)| (v, MemberMeta::Explicit { index }));
        Ok(Self::assemble(group, spec, limit, items))
    }

    pub fn group(&self) -> &GroupDesc {
        &self.group
    }

    pub fn spec(&self) -> &SeqSpec {
        &self.spec
    }

    pub fn limit(&self) -> &Element {
        &self.limit
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn values(&self) -> impl Iterator<Item = &Element> {
        self.members.iter().map(|m| &m.value)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.index.contains_key(x)
    }

    pub fn position(&self, x: &Element) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Component sequences of a fan; empty otherwise.
    pub fn parts(&self) -> &[SuperSeq] {
        &self.parts
    }
}

impl Serialize for SuperSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            group: &'a GroupDesc,
            sequence: &'a SeqSpec,
            limit: &'a Element,
            members: &'a [Member],
        }
        Repr {
            group: &self.group,
            sequence: &self.spec,
            limit: &self.limit,
            members: &self.members,
        }
        .serialize(s)
    }
}

fn half_inverse(n: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2 * n))
}

/// Members `phi(1/(2n))` for `1 <= n <= N`, limit 0.
pub fn torus_sequence(n: u64) -> Result<SuperSeq> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    if n > MEMBER_LIMIT {
        return Err(Error::TooLarge(format!("{n} members")));
    }
    let items = (1..=n).map(|k| (Element::Torus(phi(&half_inverse(k))), MemberMeta::Torus { n: k }));
    Ok(SuperSeq::assemble(
        GroupDesc::Torus,
        SeqSpec::Torus { n },
        Element::Torus(UnitRational::ZERO),
        items,
    ))
}

/// The `(n, m, m k_n)` triples of the profinite truncation, in `(n, m)` order.
fn block_members(primes: &[u64], n_max: usize, m_cap: Option<u64>) -> Result<Vec<(usize, u64, BigInt)>> {
    validate_primes(primes)?;
    if n_max + 1 > primes.len() {
        return Err(Error::IndexOutOfRange {
            index: n_max + 1,
            available: primes.len(),
        });
    }
    if m_cap == Some(0) {
        return Err(Error::InvalidArgument("m_cap must be positive".into()));
    }
    let mut caps = Vec::with_capacity(n_max + 1);
    let mut total: u64 = 0;
    for n in 0..=n_max {
        let next = k_sequence(primes, n + 1)?;
        let cap = match (next.to_u64(), m_cap) {
            (Some(k), Some(c)) => k.min(c),
            (None, Some(c)) => c,
            (Some(k), None) => k,
            (None, None) => MEMBER_LIMIT + 1,
        };
        total = total.saturating_add(cap);
        caps.push(cap);
    }
    if total > MEMBER_LIMIT {
        return Err(Error::TooLarge(format!("{total} members; pass a smaller m_cap")));
    }
    let mut out = Vec::with_capacity(total as usize);
    for (n, cap) in caps.into_iter().enumerate() {
        let k = k_sequence(primes, n)?;
        let mut value = BigInt::from(0);
        for m in 1..=cap {
            value += &k;
            out.push((n, m, value.clone()));
        }
    }
    Ok(out)
}

/// Members `m k_n v` for `0 <= n <= n_max`, `1 <= m <= min(k_{n+1}, m_cap)`.
pub fn profinite_sequence(primes: &[u64], n_max: usize, m_cap: Option<u64>) -> Result<SuperSeq> {
    let blocks = block_members(primes, n_max, m_cap)?;
    let group = GroupDesc::profinite(primes.to_vec())?;
    let limit = group_zero(&group);
    let spec = SeqSpec::Profinite {
        primes: primes.to_vec(),
        n_max,
        m_cap,
    };
    let items = blocks
        .into_iter()
        .map(|(n, m, value)| (Element::int_point(value), MemberMeta::Block { n, m }));
    Ok(SuperSeq::assemble(group, spec, limit, items))
}

/// `S'` (images `pi(-m k_n, 0)` of the profinite members) followed by
/// `S'' = {pi(1/(2n), 0) : 1 <= n <= N}`; every member lies in `pi(R x {0})`.
pub fn solenoid_sequence(primes: &[u64], n_max: usize, n: u64, m_cap: Option<u64>) -> Result<SuperSeq> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let blocks = block_members(primes, n_max, m_cap)?;
    let group = GroupDesc::solenoid(primes.to_vec())?;
    let limit = group_zero(&group);
    let spec = SeqSpec::Solenoid {
        primes: primes.to_vec(),
        n_max,
        n,
        m_cap,
    };
    let s_prime = blocks.into_iter().map(|(bn, m, value)| {
        (
            Element::solenoid_real(BigRational::from_integer(-value)),
            MemberMeta::SPrime { n: bn, m },
        )
    });
    let s_double = (1..=n).map(|k| (Element::solenoid_real(half_inverse(k)), MemberMeta::SDoublePrime { n: k }));
    Ok(SuperSeq::assemble(group, spec, limit, s_prime.chain(s_double)))
}

/// Union of coordinate-embedded copies of the parts inside the product group.
pub fn fan(parts: Vec<SuperSeq>) -> Result<SuperSeq> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument("fan needs at least one part".into()));
    }
    let factors: Vec<GroupDesc> = parts.iter().map(|p| p.group.clone()).collect();
    let zeros: Vec<Element> = factors.iter().map(group_zero).collect();
    let group = GroupDesc::product(factors)?;
    let limit = Element::Tuple(zeros.clone());
    let spec = SeqSpec::Fan {
        parts: parts.iter().map(|p| p.spec.clone()).collect(),
    };
    let mut items = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        for member in &part.members {
            let mut coords = zeros.clone();
            coords[i] = member.value.clone();
            for meta in &member.meta {
                items.push((
                    Element::Tuple(coords.clone()),
                    MemberMeta::Component {
                        index: i,
                        inner: Box::new(meta.clone()),
                    },
                ));
            }
        }
    }
    let mut seq = SuperSeq::assemble(group, spec, limit, items);
    seq.parts = parts;
    Ok(seq)
}

/// `E x {e}` inside `A x F`.
pub fn with_finite_factor(seq: &SuperSeq, finite: &FiniteFactor) -> SuperSeq {
    let e = finite.group().identity();
    let group = GroupDesc::ProductWithFinite {
        abelian: Box::new(seq.group.clone()),
        finite: finite.clone(),
    };
    let limit = Element::Tuple(vec![seq.limit.clone(), Element::Finite(e)]);
    let spec = SeqSpec::WithFiniteFactor {
        base: Box::new(seq.spec.clone()),
        finite: finite.group().name().to_string(),
    };
    let items = seq.members.iter().flat_map(|m| {
        let v = Element::Tuple(vec![m.value.clone(), Element::Finite(e)]);
        m.meta.iter().map(move |meta| (v.clone(), meta.clone()))
    });
    let mut out = SuperSeq::assemble(group, spec, limit, items);
    out.parts = vec![seq.clone()];
    out
}

/// Target group of a quotient map applied to `g`.
pub fn image_group(g: &GroupDesc, map: QuotientMap) -> Result<GroupDesc> {
    match (map, g) {
        (QuotientMap::SolenoidToTorus, GroupDesc::Solenoid { .. }) => Ok(GroupDesc::Torus),
        (QuotientMap::ProductProjection(i), GroupDesc::Product { factors }) if i < factors.len() => {
            Ok(factors[i].clone())
        }
        (QuotientMap::DropFiniteFactor, GroupDesc::ProductWithFinite { abelian, .. }) => Ok((**abelian).clone()),
        _ => Err(Error::KindMismatch(format!("{map:?} does not apply to a {} group", g.kind_name()))),
    }
}

pub fn apply_map(g: &GroupDesc, map: QuotientMap, x: &Element) -> Result<Element> {
    image_group(g, map)?;
    let bad = || Error::KindMismatch(format!("{map:?} cannot map {x:?}"));
    match (map, x) {
        (QuotientMap::SolenoidToTorus, Element::Solenoid(p)) => {
            // pi(r, h) and pi(r - k, h - k v) agree; the class of r mod 1 is well defined
            let r = p.r();
            let den = r.denom().to_u64().ok_or_else(bad)?;
            Ok(Element::Torus(UnitRational::from_big(r.numer(), den)))
        }
        (QuotientMap::ProductProjection(i), Element::Tuple(xs)) => xs.get(i).cloned().ok_or_else(bad),
        (QuotientMap::DropFiniteFactor, Element::Tuple(xs)) if xs.len() == 2 => Ok(xs[0].clone()),
        _ => Err(bad()),
    }
}

/// Image sequence; coinciding images merge, and images of the limit are absorbed.
pub fn pushforward(seq: &SuperSeq, map: QuotientMap) -> Result<SuperSeq> {
    let group = image_group(&seq.group, map)?;
    let limit = apply_map(&seq.group, map, &seq.limit)?;
    let mut items = Vec::new();
    for m in &seq.members {
        let image = apply_map(&seq.group, map, &m.value)?;
        for meta in &m.meta {
            items.push((image.clone(), MemberMeta::Image { inner: Box::new(meta.clone()) }));
        }
    }
    let spec = SeqSpec::Pushforward {
        source: Box::new(seq.spec.clone()),
        map,
    };
    Ok(SuperSeq::assemble(group, spec, limit, items))
}

/// `xi o f` for a character `xi` of the target of the quotient map `f`.
pub fn lift_character(source: &GroupDesc, map: QuotientMap, xi: &Character) -> Result<Character> {
    let bad = || Error::KindMismatch(format!("cannot lift {xi:?} through {map:?}"));
    match (map, source, xi) {
        (QuotientMap::SolenoidToTorus, GroupDesc::Solenoid { .. }, Character::Torus(m)) => {
            Ok(Character::Solenoid(SolenoidChar::new(*m, 1)))
        }
        (QuotientMap::ProductProjection(i), GroupDesc::Product { factors }, _) if i < factors.len() => {
            let mut cs: Vec<Character> = factors.iter().map(trivial_char).collect();
            cs[i] = xi.clone();
            Ok(Character::Product(cs))
        }
        (QuotientMap::DropFiniteFactor, GroupDesc::ProductWithFinite { finite, .. }, _) => Ok(Character::Product(vec![
            xi.clone(),
            Character::FiniteAbelian(vec![0; finite.abelianization().invariant_factors().len()]),
        ])),
        _ => Err(bad()),
    }
}

/// Members of a sequence offered as a suitable set. Suitability additionally
/// needs topological generation, which `certify::certify_suitable` checks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuitableCandidate {
    pub group: GroupDesc,
    pub elements: Vec<Element>,
    pub requires_generation_check: bool,
}

pub fn extract_suitable(seq: &SuperSeq) -> SuitableCandidate {
    SuitableCandidate {
        group: seq.group.clone(),
        elements: seq.values().filter(|v| **v != seq.limit).cloned().collect(),
        requires_generation_check: true,
    }
}

/// `pi(-j, 0)`, the arc-component form of `pi(0, j v)`.
pub fn s_prime_point(j: &BigInt) -> Element {
    Element::Solenoid(SolenoidPoint::real(BigRational::from_integer(-j)))
}
