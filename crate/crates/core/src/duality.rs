//! Characters of the supported groups, their exact evaluation, and bounded
//! enumeration of the dual group.
//!
//! Pairing conventions:
//!
//! * circle: `m` acts as `x -> m x`;
//! * profinite integers: `a/b` acts as `h -> phi(a (h mod b) / b)`;
//! * solenoid: `a/b` acts as `pi(r, h) -> phi((a/b) r - a (h mod b) / b)`.
//!   This kills `u = (1, v)` and restricts to `r -> phi((a/b) r)` on the arc
//!   component. Its restriction to `pi({0} x H)` is the profinite character `-a/b`.
//!
//! Enumeration order is `(complexity, character)` so a certificate at a smaller
//! bound is always a prefix of one at a larger bound.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::is_prime;
use crate::circle::UnitRational;
use crate::error::{Error, Result};
use crate::groups::{residue_mod, Element, GroupDesc, ProfiniteElem, SolenoidPoint};

/// Enumerations larger than this are refused.
pub const ENUMERATION_LIMIT: usize = 20_000_000;

/// A reduced rational `a/b` labelling a character of the solenoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SolenoidChar {
    a: i64,
    b: u64,
}

impl SolenoidChar {
    pub fn new(a: i64, b: u64) -> Self {
        assert!(b > 0, "zero denominator");
        let g = (a.unsigned_abs()).gcd(&b).max(1);
        SolenoidChar {
            a: a / g as i64,
            b: b / g,
        }
    }

    pub fn numer(&self) -> i64 {
        self.a
    }

    pub fn denom(&self) -> u64 {
        self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0
    }

    /// The profinite character obtained by restricting to `pi({0} x H)`.
    pub fn restriction_to_profinite(&self) -> UnitRational {
        UnitRational::new(-(self.a as i128), self.b)
    }
}

impl fmt::Display for SolenoidChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 1 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}/{}", self.a, self.b)
        }
    }
}

impl Serialize for SolenoidChar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum Character {
    Torus(i64),
    Profinite(UnitRational),
    Solenoid(SolenoidChar),
    Cyclic { k: u64, n: u64 },
    /// Parameters of a character of the abelianization of a finite factor.
    FiniteAbelian(Vec<u64>),
    Product(Vec<Character>),
}

impl Character {
    pub fn is_trivial(&self) -> bool {
        match self {
            Character::Torus(m) => *m == 0,
            Character::Profinite(q) => q.is_zero(),
            Character::Solenoid(q) => q.is_zero(),
            Character::Cyclic { k, .. } => *k == 0,
            Character::FiniteAbelian(ks) => ks.iter().all(|&k| k == 0),
            Character::Product(cs) => cs.iter().all(Character::is_trivial),
        }
    }

    /// Enumeration complexity; 0 exactly for trivial characters of the infinite
    /// kinds, and 0 for every finite-abelian character.
    pub fn complexity(&self) -> u64 {
        match self {
            Character::Torus(m) => m.unsigned_abs(),
            Character::Profinite(q) => {
                if q.is_zero() {
                    0
                } else {
                    q.den()
                }
            }
            Character::Solenoid(q) => {
                if q.is_zero() {
                    0
                } else {
                    q.a.unsigned_abs().max(q.b)
                }
            }
            Character::Cyclic { k, n } => (*k).min(n - k),
            Character::FiniteAbelian(_) => 0,
            Character::Product(cs) => cs.iter().map(Character::complexity).max().unwrap_or(0),
        }
    }

    pub fn as_product(&self) -> Option<&[Character]> {
        match self {
            Character::Product(cs) => Some(cs),
            _ => None,
        }
    }
}

impl Character {
    fn tag(&self) -> u8 {
        match self {
            Character::Torus(_) => 0,
            Character::Profinite(_) => 1,
            Character::Solenoid(_) => 2,
            Character::Cyclic { .. } => 3,
            Character::FiniteAbelian(_) => 4,
            Character::Product(_) => 5,
        }
    }
}

/// Kind tag, then fields; circle characters order as `1, -1, 2, -2, ...`.
impl Ord for Character {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Character::*;
        match (self, other) {
            (Torus(a), Torus(b)) => (a.unsigned_abs(), *a < 0).cmp(&(b.unsigned_abs(), *b < 0)),
            (Profinite(a), Profinite(b)) => a.cmp(b),
            (Solenoid(a), Solenoid(b)) => a.cmp(b),
            (Cyclic { k: a, n: na }, Cyclic { k: b, n: nb }) => (na, a).cmp(&(nb, b)),
            (FiniteAbelian(a), FiniteAbelian(b)) => a.cmp(b),
            (Product(a), Product(b)) => a.cmp(b),
            _ => self.tag().cmp(&other.tag()),
        }
    }
}

impl PartialOrd for Character {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Bound on character complexity for enumeration; always at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Complexity(u64);

impl Complexity {
    pub fn new(bound: u64) -> Result<Self> {
        if bound == 0 {
            return Err(Error::InvalidArgument("complexity bound must be at least 1".into()));
        }
        Ok(Complexity(bound))
    }

    pub fn get(&self) -> u64 {
        self.0
    }
}

pub fn trivial_char(g: &GroupDesc) -> Character {
    match g {
        GroupDesc::Torus => Character::Torus(0),
        GroupDesc::Profinite { .. } => Character::Profinite(UnitRational::ZERO),
        GroupDesc::Solenoid { .. } => Character::Solenoid(SolenoidChar::new(0, 1)),
        GroupDesc::Cyclic { n } => Character::Cyclic { k: 0, n: *n },
        GroupDesc::Product { factors } => Character::Product(factors.iter().map(trivial_char).collect()),
        GroupDesc::ProductWithFinite { abelian, finite } => Character::Product(vec![
            trivial_char(abelian),
            Character::FiniteAbelian(vec![0; finite.abelianization().invariant_factors().len()]),
        ]),
    }
}

fn kind_mismatch(g: &GroupDesc, chi: &Character, x: &Element) -> Error {
    Error::KindMismatch(format!(
        "cannot evaluate {chi:?} at {x:?} in {} group",
        g.kind_name()
    ))
}

/// `phi(a r / b)` for a rational `r`, computed without forming `a r`.
fn scaled_real(a: i64, b: u64, r: &num_rational::BigRational) -> UnitRational {
    let rd = r.denom().to_u64().expect("real coordinate denominator fits u64");
    let modulus = b.checked_mul(rd).expect("solenoid pairing denominator overflow");
    let rn = r.numer().mod_floor(&BigInt::from(modulus)).to_u64().unwrap();
    UnitRational::new(a as i128 * rn as i128, modulus)
}

pub fn eval_solenoid(q: SolenoidChar, p: &SolenoidPoint) -> Result<UnitRational> {
    let real = scaled_real(q.a, q.b, p.r());
    match p.h() {
        ProfiniteElem::IntegerPoint(m) if m.is_zero() => Ok(real),
        h => {
            let res = residue_mod(h, q.b)?;
            Ok(real.sub(UnitRational::new(q.a as i128 * res as i128, q.b)))
        }
    }
}

pub fn eval_profinite(q: UnitRational, h: &ProfiniteElem) -> Result<UnitRational> {
    if q.is_zero() {
        return Ok(UnitRational::ZERO);
    }
    let res = residue_mod(h, q.den())?;
    Ok(UnitRational::new(q.num() as i128 * res as i128, q.den()))
}

/// Exact value `chi(x)` in `Q/Z`.
pub fn eval_char(g: &GroupDesc, chi: &Character, x: &Element) -> Result<UnitRational> {
    match (g, chi, x) {
        (GroupDesc::Torus, Character::Torus(m), Element::Torus(t)) => Ok(t.scale(*m)),
        (GroupDesc::Profinite { .. }, Character::Profinite(q), Element::Profinite(h)) => eval_profinite(*q, h),
        (GroupDesc::Solenoid { .. }, Character::Solenoid(q), Element::Solenoid(p)) => eval_solenoid(*q, p),
        (GroupDesc::Cyclic { n }, Character::Cyclic { k, n: cn }, Element::Cyclic(c)) if n == cn && c < n => {
            Ok(UnitRational::new(*k as i128 * *c as i128, *n))
        }
        (GroupDesc::Product { factors }, Character::Product(cs), Element::Tuple(xs))
            if cs.len() == factors.len() && xs.len() == factors.len() =>
        {
            factors
                .iter()
                .zip(cs.iter().zip(xs))
                .try_fold(UnitRational::ZERO, |acc, (f, (c, x))| Ok(acc.add(eval_char(f, c, x)?)))
        }
        (GroupDesc::ProductWithFinite { abelian, finite }, Character::Product(cs), Element::Tuple(xs)) => {
            match (cs.as_slice(), xs.as_slice()) {
                ([ca, Character::FiniteAbelian(ks)], [xa, Element::Finite(i)])
                    if ks.len() == finite.abelianization().invariant_factors().len()
                        && *i < finite.group().order() =>
                {
                    let a = eval_char(abelian, ca, xa)?;
                    Ok(a.add(finite.abelianization().eval(ks, *i)))
                }
                _ => Err(kind_mismatch(g, chi, x)),
            }
        }
        _ => Err(kind_mismatch(g, chi, x)),
    }
}

/// True iff `chi` vanishes on every element of `xs`.
pub fn annihilates<'a>(
    g: &GroupDesc,
    chi: &Character,
    xs: impl IntoIterator<Item = &'a Element>,
) -> Result<bool> {
    for x in xs {
        if !eval_char(g, chi, x)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fails if some prime at most `bound` is missing from `primes`.
pub fn check_prime_coverage(primes: &[u64], bound: u64) -> Result<()> {
    for p in 2..=bound {
        if is_prime(p) && primes.binary_search(&p).is_err() {
            return Err(Error::UnsupportedBound { bound, prime: p });
        }
    }
    Ok(())
}

/// Nonzero characters of complexity at most `bound`, in `(complexity, character)` order.
pub fn enumerate_chars(g: &GroupDesc, bound: Complexity) -> Result<Vec<Character>> {
    let b = bound.get();
    let mut out = match g {
        GroupDesc::Torus => (1..=b as i64)
            .flat_map(|m| [Character::Torus(-m), Character::Torus(m)])
            .collect(),
        GroupDesc::Profinite { primes } => {
            check_prime_coverage(primes, b)?;
            guard_size(b.saturating_mul(b) / 2)?;
            let mut v = Vec::new();
            for den in 2..=b {
                for num in 1..den {
                    if num.gcd(&den) == 1 {
                        v.push(Character::Profinite(UnitRational::new(num as i128, den)));
                    }
                }
            }
            v
        }
        GroupDesc::Solenoid { primes } => {
            check_prime_coverage(primes, b)?;
            guard_size(b.saturating_mul(b).saturating_mul(2))?;
            let mut v = Vec::new();
            for den in 1..=b {
                for num in 1..=b as i64 {
                    if (num as u64).gcd(&den) == 1 {
                        v.push(Character::Solenoid(SolenoidChar::new(-num, den)));
                        v.push(Character::Solenoid(SolenoidChar::new(num, den)));
                    }
                }
            }
            v
        }
        GroupDesc::Cyclic { n } => (1..*n)
            .filter(|&k| k.min(n - k) <= b)
            .map(|k| Character::Cyclic { k, n: *n })
            .collect(),
        GroupDesc::Product { factors } => {
            let axes = factors
                .iter()
                .map(|f| with_trivial(f, bound))
                .collect::<Result<Vec<_>>>()?;
            cartesian(&axes)?
        }
        GroupDesc::ProductWithFinite { abelian, finite } => {
            let axes = vec![
                with_trivial(abelian, bound)?,
                finite
                    .abelianization()
                    .characters()
                    .into_iter()
                    .map(Character::FiniteAbelian)
                    .collect(),
            ];
            cartesian(&axes)?
        }
    };
    out.sort_by(|x, y| x.complexity().cmp(&y.complexity()).then_with(|| x.cmp(y)));
    Ok(out)
}

fn with_trivial(g: &GroupDesc, bound: Complexity) -> Result<Vec<Character>> {
    let mut v = vec![trivial_char(g)];
    v.extend(enumerate_chars(g, bound)?);
    Ok(v)
}

fn guard_size(n: u64) -> Result<()> {
    if n > ENUMERATION_LIMIT as u64 {
        return Err(Error::TooLarge(format!("{n} characters")));
    }
    Ok(())
}

/// Tuples over the axes (each starting with its trivial character), minus the all-trivial tuple.
fn cartesian(axes: &[Vec<Character>]) -> Result<Vec<Character>> {
    let total = axes
        .iter()
        .try_fold(1u64, |acc, a| acc.checked_mul(a.len() as u64))
        .unwrap_or(u64::MAX);
    guard_size(total)?;
    let mut out: Vec<Vec<Character>> = vec![vec![]];
    for axis in axes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                axis.iter().map(move |c| {
                    let mut v = prefix.clone();
                    v.push(c.clone());
                    v
                })
            })
            .collect();
    }
    Ok(out
        .into_iter()
        .map(Character::Product)
        .filter(|c| !c.is_trivial())
        .collect())
}

pub fn torus_param(chi: &Character) -> Option<i64> {
    match chi {
        Character::Torus(m) => Some(*m),
        _ => None,
    }
}
