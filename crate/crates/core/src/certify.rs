//! Witness finders following the constructive proofs, the bounded qc-density and
//! generation certifiers, and the escape (convergence) report for the profinite
//! sequence.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::arith::factorize;
use crate::circle::UnitRational;
use crate::duality::{enumerate_chars, eval_char, trivial_char, Character, Complexity, SolenoidChar};
use crate::error::{Error, Result};
use crate::groups::{in_wn, k_sequence, validate_primes, Element, GroupDesc, ProfiniteElem};
use crate::nonabelian::{FiniteFactor, FiniteGroup};
use crate::sequences::{extract_suitable, s_prime_point, with_finite_factor, SeqSpec, SuitableCandidate, SuperSeq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    TorusFormula,
    MinimalN,
    SolenoidSplit,
    FanComponent,
    BruteForce,
    /// First member with a nonzero value, used by generation certificates.
    NonzeroScan,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessRecord {
    pub character: Character,
    pub witness: Element,
    pub value: UnitRational,
    pub in_tplus: bool,
    pub method: Method,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    QcDensity,
    Generation,
}

/// How the records cover the characters at the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Coverage {
    /// One record per enumerated character.
    Exhaustive,
    /// Fans only: one record per `(j, chi_j)`. Its character has `chi_j` in
    /// slot `j` and zeros elsewhere, and its witness is supported on slot `j`,
    /// so the same witness and value serve every character whose first nonzero
    /// component is `chi_j` in slot `j`.
    LeadingComponent,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Certified,
    Failed(Character),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub group: GroupDesc,
    pub sequence: SeqSpec,
    pub bound: Complexity,
    pub property: Property,
    pub coverage: Coverage,
    pub status: Status,
    pub records: Vec<WitnessRecord>,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.status == Status::Certified
    }

    pub fn failed_character(&self) -> Option<&Character> {
        match &self.status {
            Status::Failed(c) => Some(c),
            Status::Certified => None,
        }
    }
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(8))?;
        map.serialize_entry("group", &self.group)?;
        map.serialize_entry("sequence", &self.sequence)?;
        map.serialize_entry("bound", &self.bound)?;
        map.serialize_entry("property", &self.property)?;
        map.serialize_entry("coverage", &self.coverage)?;
        let status = if self.is_certified() { "certified" } else { "failed" };
        map.serialize_entry("status", status)?;
        map.serialize_entry("failed_character", &self.failed_character())?;
        map.serialize_entry("records", &self.records)?;
        map.end()
    }
}

fn record(g: &GroupDesc, character: Character, witness: Element, method: Method) -> Result<WitnessRecord> {
    let value = eval_char(g, &character, &witness)?;
    Ok(WitnessRecord {
        character,
        witness,
        in_tplus: value.in_tplus(),
        value,
        method,
    })
}

fn require_member(seq: &SuperSeq, w: &Element, need: impl FnOnce() -> String) -> Result<()> {
    if seq.contains(w) {
        Ok(())
    } else {
        Err(Error::TruncationTooSmall(need()))
    }
}

/// `phi(1/(2|m|))`, where `m phi(1/(2|m|)) = phi(+-1/2)`.
pub fn witness_torus(m: i64, seq: &SuperSeq) -> Result<WitnessRecord> {
    if m == 0 {
        return Err(Error::InvalidArgument("torus witness needs m != 0".into()));
    }
    let n = m.unsigned_abs();
    let w = Element::Torus(UnitRational::new(1, 2 * n));
    require_member(seq, &w, || format!("needs N >= {n}"))?;
    record(seq.group(), Character::Torus(m), w, Method::TorusFormula)
}

/// The minimal-`n` choice for a profinite character `q = a/b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProfinitePlan {
    /// Least `n` with `b | k_n`, i.e. `W_n` inside the kernel.
    pub n: usize,
    /// `q(k_{n-1} v)`, nonzero by minimality of `n`.
    pub step: UnitRational,
    /// Least `m >= 1` with `m * step` outside the arc.
    pub m: u64,
}

/// Witness search for profinite characters with the `k_n` cached.
#[derive(Clone, Debug)]
pub struct ProfiniteFinder {
    primes: Vec<u64>,
    k: Vec<BigInt>,
}

impl ProfiniteFinder {
    pub fn new(primes: &[u64]) -> Result<Self> {
        validate_primes(primes)?;
        let k = (0..=primes.len())
            .map(|n| k_sequence(primes, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(ProfiniteFinder {
            primes: primes.to_vec(),
            k,
        })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn k(&self, n: usize) -> &BigInt {
        &self.k[n]
    }

    pub fn plan(&self, q: UnitRational) -> Result<ProfinitePlan> {
        let b = q.den();
        if b < 2 {
            return Err(Error::InvalidArgument("profinite witness needs b >= 2".into()));
        }
        // p_i^e divides k_j = (p_0 ... p_{j-1})^j iff i < j and e <= j
        let mut n = 0usize;
        for (p, e) in factorize(b) {
            let i = self
                .primes
                .binary_search(&p)
                .map_err(|_| Error::UnsupportedBound { bound: b, prime: p })?;
            n = n.max(i + 1).max(e as usize);
        }
        if n > self.primes.len() {
            return Err(Error::TruncationTooSmall(format!(
                "{q} needs k_{n}, beyond {} primes",
                self.primes.len()
            )));
        }
        let r = (&self.k[n - 1] % BigInt::from(b)).to_u64().unwrap();
        let step = UnitRational::new(q.num() as i128 * r as i128, b);
        if step.is_zero() {
            return Err(Error::InvariantViolated(format!("{q} vanishes on k_{} v", n - 1)));
        }
        let m = (1..=step.order())
            .find(|&m| !step.scale(m as i64).in_tplus())
            .ok_or_else(|| Error::InvariantViolated(format!("no multiple of {step} leaves the arc")))?;
        Ok(ProfinitePlan { n, step, m })
    }

    /// The witness `m k_{n-1}` as an integer.
    pub fn witness_integer(&self, plan: &ProfinitePlan) -> BigInt {
        &self.k[plan.n - 1] * BigInt::from(plan.m)
    }

    fn missing(plan: &ProfinitePlan) -> String {
        format!("needs n_max >= {} and m_cap >= {}", plan.n - 1, plan.m)
    }

    pub fn witness_profinite(&self, q: UnitRational, seq: &SuperSeq) -> Result<WitnessRecord> {
        let plan = self.plan(q)?;
        let w = Element::int_point(self.witness_integer(&plan));
        require_member(seq, &w, || Self::missing(&plan))?;
        record(seq.group(), Character::Profinite(q), w, Method::MinimalN)
    }

    pub fn witness_solenoid(&self, q: SolenoidChar, seq: &SuperSeq) -> Result<WitnessRecord> {
        if q.is_zero() {
            return Err(Error::InvalidArgument("solenoid witness needs q != 0".into()));
        }
        let w = if q.denom() == 1 {
            // trivial on N: a torus character through C/N, witnessed inside S''
            let n = q.numer().unsigned_abs();
            let w = Element::solenoid_real(BigRational::new(BigInt::one(), BigInt::from(2 * n)));
            require_member(seq, &w, || format!("needs N >= {n}"))?;
            w
        } else {
            let plan = self.plan(q.restriction_to_profinite())?;
            let w = s_prime_point(&self.witness_integer(&plan));
            require_member(seq, &w, || Self::missing(&plan))?;
            w
        };
        record(seq.group(), Character::Solenoid(q), w, Method::SolenoidSplit)
    }
}

pub fn witness_profinite(q: UnitRational, primes: &[u64], seq: &SuperSeq) -> Result<WitnessRecord> {
    ProfiniteFinder::new(primes)?.witness_profinite(q, seq)
}

pub fn witness_solenoid(q: SolenoidChar, primes: &[u64], seq: &SuperSeq) -> Result<WitnessRecord> {
    ProfiniteFinder::new(primes)?.witness_solenoid(q, seq)
}

/// Constructive finder chosen from the shape of a sequence.
#[derive(Clone, Debug)]
enum Finder {
    Torus,
    Profinite(ProfiniteFinder),
    Solenoid(ProfiniteFinder),
    Fan(Vec<Finder>),
    WithFinite(Box<Finder>),
    None,
}

impl Finder {
    fn build(seq: &SuperSeq) -> Result<Self> {
        Ok(match seq.group() {
            GroupDesc::Torus => Finder::Torus,
            GroupDesc::Profinite { primes } => Finder::Profinite(ProfiniteFinder::new(primes)?),
            GroupDesc::Solenoid { primes } => Finder::Solenoid(ProfiniteFinder::new(primes)?),
            GroupDesc::Product { .. } if !seq.parts().is_empty() => {
                Finder::Fan(seq.parts().iter().map(Finder::build).collect::<Result<_>>()?)
            }
            GroupDesc::ProductWithFinite { .. } if seq.parts().len() == 1 => {
                Finder::WithFinite(Box::new(Finder::build(&seq.parts()[0])?))
            }
            _ => Finder::None,
        })
    }

    fn constructive(&self, seq: &SuperSeq, chi: &Character) -> Result<WitnessRecord> {
        let none = || Error::TruncationTooSmall("no constructive finder applies".into());
        match (self, chi) {
            (Finder::Torus, Character::Torus(m)) => witness_torus(*m, seq),
            (Finder::Profinite(f), Character::Profinite(q)) => f.witness_profinite(*q, seq),
            (Finder::Solenoid(f), Character::Solenoid(q)) => f.witness_solenoid(*q, seq),
            (Finder::Fan(parts), Character::Product(cs)) => {
                let j = cs.iter().position(|c| !c.is_trivial()).ok_or_else(none)?;
                let inner = parts[j]
                    .find(&seq.parts()[j], &cs[j], Property::QcDensity)?
                    .ok_or_else(|| Error::TruncationTooSmall(format!("component {j} has no witness")))?;
                let w = embed(seq, j, inner.witness)?;
                record(seq.group(), chi.clone(), w, Method::FanComponent)
            }
            (Finder::WithFinite(base), Character::Product(cs)) if cs.len() == 2 && !cs[0].is_trivial() => {
                let inner = base
                    .find(&seq.parts()[0], &cs[0], Property::QcDensity)?
                    .ok_or_else(none)?;
                let e = match seq.limit() {
                    Element::Tuple(xs) => xs[1].clone(),
                    _ => return Err(none()),
                };
                record(seq.group(), chi.clone(), Element::Tuple(vec![inner.witness, e]), inner.method)
            }
            _ => Err(none()),
        }
    }

    /// Constructive finder first; on a truncation miss, the member scan.
    fn find(&self, seq: &SuperSeq, chi: &Character, property: Property) -> Result<Option<WitnessRecord>> {
        if property == Property::Generation {
            return scan(seq, chi, property);
        }
        match self.constructive(seq, chi) {
            Ok(r) => Ok(Some(r)),
            Err(Error::TruncationTooSmall(_)) => scan(seq, chi, property),
            Err(e) => Err(e),
        }
    }
}

fn embed(fan: &SuperSeq, j: usize, w: Element) -> Result<Element> {
    match fan.limit() {
        Element::Tuple(zeros) if j < zeros.len() => {
            let mut coords = zeros.clone();
            coords[j] = w;
            Ok(Element::Tuple(coords))
        }
        _ => Err(Error::KindMismatch("not a fan".into())),
    }
}

fn accepts(property: Property, value: UnitRational) -> bool {
    match property {
        Property::QcDensity => !value.in_tplus(),
        Property::Generation => !value.is_zero(),
    }
}

fn scan(seq: &SuperSeq, chi: &Character, property: Property) -> Result<Option<WitnessRecord>> {
    let method = match property {
        Property::QcDensity => Method::BruteForce,
        Property::Generation => Method::NonzeroScan,
    };
    for x in seq.values() {
        let value = eval_char(seq.group(), chi, x)?;
        if accepts(property, value) {
            return Ok(Some(WitnessRecord {
                character: chi.clone(),
                witness: x.clone(),
                value,
                in_tplus: value.in_tplus(),
                method,
            }));
        }
    }
    Ok(None)
}

/// First member, in canonical order, whose value leaves the arc.
pub fn brute_force_witness(seq: &SuperSeq, chi: &Character) -> Result<Option<WitnessRecord>> {
    scan(seq, chi, Property::QcDensity)
}

/// Least-index nonzero component, witnessed inside that component's part.
pub fn witness_fan(chi: &Character, fan_seq: &SuperSeq) -> Result<WitnessRecord> {
    if fan_seq.parts().is_empty() {
        return Err(Error::KindMismatch("not a fan".into()));
    }
    if chi.is_trivial() {
        return Err(Error::InvalidArgument("fan witness needs a nonzero character".into()));
    }
    Finder::build(fan_seq)?.constructive(fan_seq, chi)
}

/// Independent re-check of a record before it enters a certificate.
fn verify(seq: &SuperSeq, rec: &WitnessRecord, property: Property) -> Result<()> {
    let value = eval_char(seq.group(), &rec.character, &rec.witness)?;
    if value != rec.value || value.in_tplus() != rec.in_tplus || !accepts(property, value) {
        return Err(Error::InvariantViolated(format!(
            "record for {:?} does not re-verify",
            rec.character
        )));
    }
    if !seq.contains(&rec.witness) {
        return Err(Error::InvariantViolated(format!(
            "witness for {:?} is not a member",
            rec.character
        )));
    }
    Ok(())
}

fn lift_to_slot(fan: &SuperSeq, j: usize, chi: Character) -> Character {
    let mut cs: Vec<Character> = fan.parts().iter().map(|p| trivial_char(p.group())).collect();
    cs[j] = chi;
    Character::Product(cs)
}

fn run(seq: &SuperSeq, bound: Complexity, property: Property, coverage: Coverage) -> Result<Certificate> {
    let finder = Finder::build(seq)?;
    let results: Vec<(Character, Option<WitnessRecord>)> = match coverage {
        Coverage::Exhaustive => {
            let chars = enumerate_chars(seq.group(), bound)?;
            chars
                .into_par_iter()
                .map(|chi| {
                    let found = finder.find(seq, &chi, property)?;
                    Ok((chi, found))
                })
                .collect::<Result<_>>()?
        }
        Coverage::LeadingComponent => {
            let Finder::Fan(parts) = &finder else {
                return Err(Error::KindMismatch("leading-component coverage needs a fan".into()));
            };
            let mut classes = Vec::new();
            for (j, part) in seq.parts().iter().enumerate() {
                for chi in enumerate_chars(part.group(), bound)? {
                    classes.push((j, chi.clone(), lift_to_slot(seq, j, chi)));
                }
            }
            classes.sort_by(|x, y| x.2.complexity().cmp(&y.2.complexity()).then_with(|| x.2.cmp(&y.2)));
            classes
                .into_par_iter()
                .map(|(j, chi, rep)| {
                    let found = match parts[j].find(&seq.parts()[j], &chi, property)? {
                        Some(inner) => {
                            let w = embed(seq, j, inner.witness)?;
                            let method = match property {
                                Property::QcDensity => Method::FanComponent,
                                Property::Generation => Method::NonzeroScan,
                            };
                            Some(record(seq.group(), rep.clone(), w, method)?)
                        }
                        None => None,
                    };
                    Ok((rep, found))
                })
                .collect::<Result<_>>()?
        }
    };
    let mut status = Status::Certified;
    let mut records = Vec::with_capacity(results.len());
    for (chi, found) in results {
        match found {
            Some(rec) => {
                verify(seq, &rec, property)?;
                records.push(rec);
            }
            None => {
                if status == Status::Certified {
                    status = Status::Failed(chi);
                }
            }
        }
    }
    Ok(Certificate {
        group: seq.group().clone(),
        sequence: seq.spec().clone(),
        bound,
        property,
        coverage,
        status,
        records,
    })
}

fn default_coverage(seq: &SuperSeq) -> Coverage {
    if matches!(seq.group(), GroupDesc::Product { .. }) && !seq.parts().is_empty() {
        Coverage::LeadingComponent
    } else {
        Coverage::Exhaustive
    }
}

/// Bounded qc-density certificate: a witness outside the arc for every nonzero
/// character of complexity at most `bound`. Fans use leading-component coverage.
pub fn certify_qc(seq: &SuperSeq, bound: Complexity) -> Result<Certificate> {
    run(seq, bound, Property::QcDensity, default_coverage(seq))
}

/// As `certify_qc`, with one record per enumerated character even for fans.
pub fn certify_qc_exhaustive(seq: &SuperSeq, bound: Complexity) -> Result<Certificate> {
    run(seq, bound, Property::QcDensity, Coverage::Exhaustive)
}

/// Bounded generation certificate: no nonzero character up to `bound`
/// annihilates the members.
pub fn check_generation(seq: &SuperSeq, bound: Complexity) -> Result<Certificate> {
    run(seq, bound, Property::Generation, default_coverage(seq))
}

/// Generation check attached to the suitable-set candidate of a sequence.
pub fn certify_suitable(seq: &SuperSeq, bound: Complexity) -> Result<(SuitableCandidate, Certificate)> {
    let cert = check_generation(seq, bound)?;
    let mut candidate = extract_suitable(seq);
    candidate.requires_generation_check = !cert.is_certified();
    Ok((candidate, cert))
}

/// qc-density of `E x {e}` in `A x F`. Characters are pairs `(chi_A, zeta)`
/// with `zeta` a character of the abelianization; `(0, zeta)` pairs vanish on
/// `E x {e}` and fail unless `F` is perfect.
pub fn certify_qc_with_finite_factor(seq: &SuperSeq, f: &FiniteGroup, bound: Complexity) -> Result<Certificate> {
    let factor = FiniteFactor::new(f.clone())?;
    certify_qc(&with_finite_factor(seq, &factor), bound)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EscapeReport {
    pub n: usize,
    pub count: usize,
    pub members: Vec<Element>,
    /// Whether raising every block to its full range `m <= k_{j+1}` leaves the list unchanged.
    pub stable: bool,
}

/// Members of a profinite truncation outside `W_n = k_n H`.
pub fn escape_report(seq: &SuperSeq, n: usize) -> Result<EscapeReport> {
    let SeqSpec::Profinite { primes, n_max, m_cap } = seq.spec() else {
        return Err(Error::KindMismatch("escape report needs a profinite sequence".into()));
    };
    let outside = |x: &Element| -> Result<bool> {
        match x {
            Element::Profinite(h) => Ok(!in_wn(h, primes, n)?),
            _ => Err(Error::KindMismatch("profinite member expected".into())),
        }
    };
    if n > primes.len() {
        in_wn(&ProfiniteElem::zero(), primes, n)?;
    }
    let mut members = Vec::new();
    for x in seq.values() {
        if outside(x)? {
            members.push(x.clone());
        }
    }
    let stable = match m_cap {
        None => true,
        Some(cap) => {
            let current: HashSet<&Element> = members.iter().collect();
            let kn = k_sequence(primes, n)?;
            let mut stable = true;
            // blocks j >= n lie in W_n; only lower blocks can gain escapes
            'blocks: for j in 0..n.min(n_max + 1) {
                let kj = k_sequence(primes, j)?;
                let full = k_sequence(primes, j + 1)?;
                let d = &kn / &kj;
                let mut m = BigInt::from(*cap) + 1u32;
                // every candidate that is already a member shrinks a finite pool
                let mut budget = 2 * (seq.len() + 2);
                while m <= full && budget > 0 {
                    if !(&m % &d == BigInt::from(0)) {
                        let x = Element::int_point(&m * &kj);
                        if !current.contains(&x) {
                            stable = false;
                            break 'blocks;
                        }
                    }
                    m += 1u32;
                    budget -= 1;
                }
            }
            stable
        }
    };
    Ok(EscapeReport {
        n,
        count: members.len(),
        members,
        stable,
    })
}
