//! Eventually periodic subsets of N = {1, 2, 3, ...}.
//!
//! A set is stored as a finite prefix of membership bits followed by a block
//! that repeats forever. Every value handed out by this module is canonical:
//! the period is as short as possible and the prefix is as short as possible
//! for that period. Two canonical sets are equal as sets exactly when they are
//! structurally equal, so `==` is extensional equality.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the period produced by boolean operations.
pub const DEFAULT_PERIOD_LIMIT: u64 = 1 << 16;

/// Uncanonicalized description with explicit lengths, as read from outside.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPeriodicSet {
    pub prefix_len: usize,
    pub prefix_bits: Vec<bool>,
    pub period_len: usize,
    pub period_bits: Vec<bool>,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicSet {
    prefix: Vec<bool>,
    period: Vec<bool>,
}

/// Orbit of a proper nonempty subset of N under the full symmetric group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrbitType {
    FiniteOfSize(usize),
    CofiniteOfCodim(usize),
    Balanced,
}

impl fmt::Display for OrbitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitType::FiniteOfSize(k) => write!(f, "finite of size {k}"),
            OrbitType::CofiniteOfCodim(k) => write!(f, "cofinite of codimension {k}"),
            OrbitType::Balanced => write!(f, "balanced"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finiteness {
    /// Elements in ascending order; the cardinality is the length.
    Finite(Vec<u64>),
    Infinite,
}

impl Finiteness {
    pub fn cardinality(&self) -> Option<usize> {
        match self {
            Finiteness::Finite(v) => Some(v.len()),
            Finiteness::Infinite => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetOp {
    Union,
    Inter,
    Diff,
    SymDiff,
    Complement,
}

impl SetOp {
    fn combine(self, a: bool, b: bool) -> bool {
        match self {
            SetOp::Union => a || b,
            SetOp::Inter => a && b,
            SetOp::Diff => a && !b,
            SetOp::SymDiff => a != b,
            SetOp::Complement => !a,
        }
    }
}

/// Brings a raw description into canonical form.
pub fn canonicalize(raw: &RawPeriodicSet) -> Result<PeriodicSet> {
    if raw.period_len == 0 {
        return Err(Error::MalformedRepresentation("period length is zero".into()));
    }
    if raw.prefix_bits.len() != raw.prefix_len {
        return Err(Error::MalformedRepresentation(format!(
            "prefix length {} but {} prefix bits",
            raw.prefix_len,
            raw.prefix_bits.len()
        )));
    }
    if raw.period_bits.len() != raw.period_len {
        return Err(Error::MalformedRepresentation(format!(
            "period length {} but {} period bits",
            raw.period_len,
            raw.period_bits.len()
        )));
    }
    Ok(PeriodicSet::normalized(
        raw.prefix_bits.clone(),
        raw.period_bits.clone(),
    ))
}

/// Applies a boolean operation; `b` is required unless `kind` is complement.
pub fn set_op(kind: SetOp, a: &PeriodicSet, b: Option<&PeriodicSet>) -> Result<PeriodicSet> {
    set_op_with_limit(kind, a, b, DEFAULT_PERIOD_LIMIT)
}

pub fn set_op_with_limit(kind: SetOp, a: &PeriodicSet, b: Option<&PeriodicSet>, limit: u64) -> Result<PeriodicSet> {
    if kind == SetOp::Complement {
        return Ok(a.complement());
    }
    let b = b.ok_or_else(|| Error::MalformedRepresentation("binary set operation needs two operands".into()))?;
    let (len, period) = aligned_window(a, b);
    if period > limit {
        return Err(Error::PeriodLimitExceeded { needed: period, limit });
    }
    Ok(PeriodicSet::from_indicator(len, period, |n| {
        kind.combine(a.contains(n), b.contains(n))
    }))
}

/// Common prefix length and period of two sets.
fn aligned_window(a: &PeriodicSet, b: &PeriodicSet) -> (u64, u64) {
    let len = a.prefix.len().max(b.prefix.len()) as u64;
    let period = (a.period.len() as u64).lcm(&(b.period.len() as u64));
    (len, period)
}

impl PeriodicSet {
    fn normalized(mut prefix: Vec<bool>, mut period: Vec<bool>) -> Self {
        debug_assert!(!period.is_empty());
        let p = period.len();
        if let Some(d) = (1..=p)
            .filter(|d| p.is_multiple_of(*d))
            .find(|&d| (d..p).all(|i| period[i] == period[i % d]))
        {
            period.truncate(d);
        }
        while let Some(&last) = prefix.last() {
            if last != period[period.len() - 1] {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        PeriodicSet { prefix, period }
    }

    /// Builds a set from an indicator that is periodic with `period` beyond `len`.
    pub(crate) fn from_indicator(len: u64, period: u64, indicator: impl Fn(u64) -> bool) -> Self {
        let prefix = (1..=len).map(&indicator).collect();
        let block = (len + 1..=len + period).map(&indicator).collect();
        PeriodicSet::normalized(prefix, block)
    }

    /// Canonical set from prefix and period bits.
    pub fn from_parts(prefix: Vec<bool>, period: Vec<bool>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::MalformedRepresentation("period length is zero".into()));
        }
        Ok(PeriodicSet::normalized(prefix, period))
    }

    /// Parses bit strings over `{0,1}`.
    pub fn from_bit_strings(prefix: &str, period: &str) -> Result<Self> {
        fn bits(s: &str) -> Result<Vec<bool>> {
            s.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(Error::MalformedRepresentation(format!(
                        "bit strings use 0 and 1, found {other:?}"
                    ))),
                })
                .collect()
        }
        PeriodicSet::from_parts(bits(prefix)?, bits(period)?)
    }

    /// A finite set, encoded as prefix bits followed by an all-zero period.
    pub fn finite(elements: &[u64]) -> Result<Self> {
        if elements.contains(&0) {
            return Err(Error::DomainError(0));
        }
        let max = elements.iter().copied().max().unwrap_or(0) as usize;
        let mut prefix = vec![false; max];
        for &e in elements {
            prefix[e as usize - 1] = true;
        }
        Ok(PeriodicSet::normalized(prefix, vec![false]))
    }

    /// `{n >= 1 : n mod modulus == residue}`.
    pub fn residue_class(modulus: u64, residue: u64) -> Result<Self> {
        if modulus == 0 || residue >= modulus {
            return Err(Error::MalformedRepresentation(format!(
                "residue {residue} modulo {modulus}"
            )));
        }
        Ok(PeriodicSet::from_indicator(0, modulus, |n| n % modulus == residue))
    }

    pub fn empty() -> Self {
        PeriodicSet {
            prefix: Vec::new(),
            period: vec![false],
        }
    }

    pub fn full() -> Self {
        PeriodicSet {
            prefix: Vec::new(),
            period: vec![true],
        }
    }

    pub fn evens() -> Self {
        PeriodicSet {
            prefix: Vec::new(),
            period: vec![false, true],
        }
    }

    pub fn odds() -> Self {
        PeriodicSet {
            prefix: Vec::new(),
            period: vec![true, false],
        }
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    pub fn prefix_bits(&self) -> &[bool] {
        &self.prefix
    }

    pub fn period_bits(&self) -> &[bool] {
        &self.period
    }

    pub fn to_raw(&self) -> RawPeriodicSet {
        RawPeriodicSet {
            prefix_len: self.prefix.len(),
            prefix_bits: self.prefix.clone(),
            period_len: self.period.len(),
            period_bits: self.period.clone(),
        }
    }

    /// Membership; `0` is never a member.
    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        let len = self.prefix.len() as u64;
        if n <= len {
            self.prefix[(n - 1) as usize]
        } else {
            self.period[((n - len - 1) % self.period.len() as u64) as usize]
        }
    }

    /// Checked membership for arbitrary integer input.
    pub fn member(&self, n: i64) -> Result<bool> {
        if n < 1 {
            return Err(Error::DomainError(n));
        }
        Ok(self.contains(n as u64))
    }

    pub fn is_finite(&self) -> bool {
        self.period.iter().all(|b| !b)
    }

    pub fn is_cofinite(&self) -> bool {
        self.period.iter().all(|&b| b)
    }

    /// Infinite with infinite complement.
    pub fn is_balanced(&self) -> bool {
        !self.is_finite() && !self.is_cofinite()
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.prefix.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.is_cofinite() && self.prefix.is_empty()
    }

    pub fn finiteness(&self) -> Finiteness {
        if self.is_finite() {
            Finiteness::Finite(self.iter().collect())
        } else {
            Finiteness::Infinite
        }
    }

    pub fn classify_orbit(&self) -> Result<OrbitType> {
        if self.is_empty() || self.is_full() {
            return Err(Error::NotProperSubset);
        }
        Ok(if self.is_finite() {
            OrbitType::FiniteOfSize(self.prefix.iter().filter(|&&b| b).count())
        } else if self.is_cofinite() {
            OrbitType::CofiniteOfCodim(self.prefix.iter().filter(|&&b| !b).count())
        } else {
            OrbitType::Balanced
        })
    }

    /// Elements in ascending order. The iterator is endless for infinite sets.
    pub fn iter(&self) -> Elements<'_> {
        Elements { set: self, next: 1 }
    }

    pub fn min_element(&self) -> Option<u64> {
        self.iter().next()
    }

    /// Smallest natural number not in the set.
    pub fn min_absent(&self) -> Option<u64> {
        if self.is_full() {
            return None;
        }
        (1..).find(|&n| !self.contains(n))
    }

    /// Elements not exceeding `bound`.
    pub fn elements_upto(&self, bound: u64) -> Vec<u64> {
        self.iter().take_while(|&n| n <= bound).collect()
    }

    pub fn complement(&self) -> PeriodicSet {
        PeriodicSet {
            prefix: self.prefix.iter().map(|b| !b).collect(),
            period: self.period.iter().map(|b| !b).collect(),
        }
    }

    pub fn union(&self, other: &PeriodicSet) -> Result<PeriodicSet> {
        set_op(SetOp::Union, self, Some(other))
    }

    pub fn inter(&self, other: &PeriodicSet) -> Result<PeriodicSet> {
        set_op(SetOp::Inter, self, Some(other))
    }

    pub fn diff(&self, other: &PeriodicSet) -> Result<PeriodicSet> {
        set_op(SetOp::Diff, self, Some(other))
    }

    pub fn symdiff(&self, other: &PeriodicSet) -> Result<PeriodicSet> {
        set_op(SetOp::SymDiff, self, Some(other))
    }

    /// Adds finitely many elements.
    pub fn with(&self, elements: &[u64]) -> Result<PeriodicSet> {
        self.union(&PeriodicSet::finite(elements)?)
    }

    /// Removes finitely many elements.
    pub fn without(&self, elements: &[u64]) -> Result<PeriodicSet> {
        self.diff(&PeriodicSet::finite(elements)?)
    }

    /// `|self \ other|`, or `None` when infinite. Scans without allocating a result set.
    pub fn diff_cardinality(&self, other: &PeriodicSet) -> Option<usize> {
        let (len, period) = aligned_window(self, other);
        let in_diff = |n: u64| self.contains(n) && !other.contains(n);
        if (len + 1..=len + period).any(in_diff) {
            return None;
        }
        Some((1..=len).filter(|&n| in_diff(n)).count())
    }

    /// Smallest element of `self \ other`.
    pub fn min_diff(&self, other: &PeriodicSet) -> Option<u64> {
        let (len, period) = aligned_window(self, other);
        (1..=len + period).find(|&n| self.contains(n) && !other.contains(n))
    }

    pub fn is_subset(&self, other: &PeriodicSet) -> bool {
        self.diff_cardinality(other) == Some(0)
    }

    pub fn is_disjoint(&self, other: &PeriodicSet) -> bool {
        let (len, period) = aligned_window(self, other);
        (1..=len + period).all(|n| !(self.contains(n) && other.contains(n)))
    }

    /// Splits an infinite set into two infinite halves: ascending elements go
    /// alternately to the first part (1st, 3rd, ...) and the second part.
    pub fn split_infinite(&self) -> Result<(PeriodicSet, PeriodicSet)> {
        if self.is_finite() {
            return Err(Error::NotInfinite);
        }
        let len = self.prefix.len() as u64;
        let period = 2 * self.period.len() as u64;
        if period > DEFAULT_PERIOD_LIMIT {
            return Err(Error::PeriodLimitExceeded {
                needed: period,
                limit: DEFAULT_PERIOD_LIMIT,
            });
        }
        // Two period blocks hold an even number of elements, so the
        // alternation pattern repeats with period 2p after the prefix.
        let mut first = Vec::with_capacity((len + period) as usize);
        let mut second = Vec::with_capacity((len + period) as usize);
        let mut seen = 0u64;
        for n in 1..=len + period {
            let member = self.contains(n);
            if member {
                seen += 1;
            }
            first.push(member && seen % 2 == 1);
            second.push(member && seen.is_multiple_of(2));
        }
        let split = |bits: Vec<bool>| {
            let (head, tail) = bits.split_at(len as usize);
            PeriodicSet::normalized(head.to_vec(), tail.to_vec())
        };
        Ok((split(first), split(second)))
    }
}

impl fmt::Debug for PeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PeriodicSet({self})")
    }
}

/// Renders in the set expression grammar: finite sets as literals, all
/// others as `per(prefix;period)`.
impl fmt::Display for PeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            let items: Vec<String> = self.iter().map(|n| n.to_string()).collect();
            return write!(f, "{{{}}}", items.join(","));
        }
        let bits = |v: &[bool]| -> String { v.iter().map(|&b| if b { '1' } else { '0' }).collect() };
        write!(f, "per({};{})", bits(&self.prefix), bits(&self.period))
    }
}

pub struct Elements<'a> {
    set: &'a PeriodicSet,
    next: u64,
}

impl Iterator for Elements<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let finite_bound = if self.set.is_finite() {
            Some(self.set.prefix.len() as u64)
        } else {
            None
        };
        loop {
            let n = self.next;
            if finite_bound.is_some_and(|b| n > b) {
                return None;
            }
            self.next += 1;
            if self.set.contains(n) {
                return Some(n);
            }
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn raw(prefix: &str, period: &str) -> RawPeriodicSet {
        let bits = |s: &str| s.chars().map(|c| c == '1').collect::<Vec<_>>();
        RawPeriodicSet {
            prefix_len: prefix.len(),
            prefix_bits: bits(prefix),
            period_len: period.len(),
            period_bits: bits(period),
        }
    }

    /// Membership read straight off a raw description.
    fn raw_member(r: &RawPeriodicSet, n: u64) -> bool {
        let len = r.prefix_len as u64;
        if n <= len {
            r.prefix_bits[(n - 1) as usize]
        } else {
            r.period_bits[((n - len - 1) % r.period_len as u64) as usize]
        }
    }

    fn mult(m: u64) -> PeriodicSet {
        PeriodicSet::residue_class(m, 0).unwrap()
    }

    #[test]
    fn repeated_period_collapses_to_odds() {
        let s = canonicalize(&raw("10", "1010")).unwrap();
        assert_eq!(s, PeriodicSet::odds());
        assert_eq!(s.prefix_len(), 0);
        assert_eq!(s.period_bits(), &[true, false]);
    }

    #[test]
    fn minimal_prefix_matches_window_membership() {
        let r = raw("0", "01");
        let s = canonicalize(&r).unwrap();
        for n in 1..=3 * (1 + 2) {
            assert_eq!(s.contains(n), raw_member(&r, n), "n = {n}");
        }
        // bit 1 disagrees with the period continuation, so the prefix stays.
        assert_eq!(s.prefix_len(), 1);
        assert_eq!(canonicalize(&s.to_raw()).unwrap(), s);
    }

    #[test]
    fn malformed_raw_is_rejected() {
        let mut r = raw("1", "0");
        r.period_len = 0;
        r.period_bits.clear();
        assert!(matches!(canonicalize(&r), Err(Error::MalformedRepresentation(_))));
        let mut r = raw("10", "1");
        r.prefix_len = 3;
        assert!(matches!(canonicalize(&r), Err(Error::MalformedRepresentation(_))));
    }

    #[test]
    fn membership_examples() {
        let evens = PeriodicSet::from_bit_strings("", "01").unwrap();
        assert_eq!(evens, PeriodicSet::evens());
        assert!(evens.contains(4));
        assert!(!evens.contains(7));
        let odd_few = canonicalize(&raw("10101", "0")).unwrap();
        assert!(odd_few.contains(5));
        assert_eq!(evens.member(0), Err(Error::DomainError(0)));
        assert_eq!(evens.member(-3), Err(Error::DomainError(-3)));
    }

    #[test]
    fn boolean_examples() {
        let evens = PeriodicSet::evens();
        assert_eq!(evens.inter(&mult(3)).unwrap(), mult(6));
        assert_eq!(PeriodicSet::odds().complement(), evens);
        let d = evens.diff(&PeriodicSet::finite(&[2, 4]).unwrap()).unwrap();
        for n in 1..=12 {
            assert_eq!(d.contains(n), n % 2 == 0 && n != 2 && n != 4, "n = {n}");
        }
    }

    #[test]
    fn period_guard() {
        let a = PeriodicSet::residue_class(251, 0).unwrap();
        let b = PeriodicSet::residue_class(257, 0).unwrap();
        let err = set_op_with_limit(SetOp::Union, &a, Some(&b), 1 << 12).unwrap_err();
        assert!(matches!(err, Error::PeriodLimitExceeded { needed: 64507, .. }));
        assert!(matches!(
            set_op(SetOp::Union, &a, None),
            Err(Error::MalformedRepresentation(_))
        ));
    }

    #[test]
    fn finiteness_examples() {
        let s = PeriodicSet::finite(&[1, 2, 3]).unwrap();
        assert_eq!(s.finiteness(), Finiteness::Finite(vec![1, 2, 3]));
        assert_eq!(PeriodicSet::evens().finiteness(), Finiteness::Infinite);
        let e = PeriodicSet::evens();
        assert_eq!(e.symdiff(&e).unwrap().finiteness(), Finiteness::Finite(vec![]));
    }

    #[test]
    fn orbit_examples() {
        let s = PeriodicSet::finite(&[5, 7]).unwrap();
        assert_eq!(s.classify_orbit(), Ok(OrbitType::FiniteOfSize(2)));
        let c = PeriodicSet::finite(&[1]).unwrap().complement();
        assert_eq!(c.classify_orbit(), Ok(OrbitType::CofiniteOfCodim(1)));
        assert_eq!(PeriodicSet::evens().classify_orbit(), Ok(OrbitType::Balanced));
        assert_eq!(PeriodicSet::empty().classify_orbit(), Err(Error::NotProperSubset));
        assert_eq!(PeriodicSet::full().classify_orbit(), Err(Error::NotProperSubset));
    }

    #[test]
    fn split_examples() {
        let (a, b) = PeriodicSet::evens().split_infinite().unwrap();
        assert_eq!(a, PeriodicSet::residue_class(4, 2).unwrap());
        assert_eq!(b, mult(4));
        let (a, b) = PeriodicSet::odds().split_infinite().unwrap();
        assert_eq!(a, PeriodicSet::residue_class(4, 1).unwrap());
        assert_eq!(b, PeriodicSet::residue_class(4, 3).unwrap());

        let (a, b) = mult(3).split_infinite().unwrap();
        let elements: Vec<u64> = (1..).map(|k| 3 * k).take(20).collect();
        let odd_pos: Vec<u64> = elements.iter().copied().step_by(2).collect();
        let even_pos: Vec<u64> = elements.iter().copied().skip(1).step_by(2).collect();
        assert_eq!(a.iter().take(10).collect::<Vec<_>>(), odd_pos);
        assert_eq!(b.iter().take(10).collect::<Vec<_>>(), even_pos);

        assert_eq!(
            PeriodicSet::finite(&[1, 2]).unwrap().split_infinite(),
            Err(Error::NotInfinite)
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(PeriodicSet::evens().to_string(), "per(;01)");
        assert_eq!(PeriodicSet::finite(&[3, 1]).unwrap().to_string(), "{1,3}");
        assert_eq!(PeriodicSet::empty().to_string(), "{}");
        let s = PeriodicSet::evens().with(&[1]).unwrap();
        assert_eq!(s.to_string(), "per(1;10)");
    }

    #[test]
    fn diff_cardinality_and_subset() {
        let e = PeriodicSet::evens();
        let x = e.without(&[2, 4]).unwrap().with(&[1, 3]).unwrap();
        assert_eq!(e.diff_cardinality(&x), Some(2));
        assert_eq!(x.diff_cardinality(&e), Some(2));
        assert_eq!(e.diff_cardinality(&PeriodicSet::odds()), None);
        assert!(mult(4).is_subset(&e));
        assert!(!e.is_subset(&mult(4)));
        assert!(e.is_disjoint(&PeriodicSet::odds()));
        assert_eq!(e.min_diff(&mult(4)), Some(2));
    }

    pub(crate) fn arb_raw() -> impl Strategy<Value = RawPeriodicSet> {
        (
            proptest::collection::vec(any::<bool>(), 0..10),
            proptest::collection::vec(any::<bool>(), 1..7),
        )
            .prop_map(|(prefix, period)| RawPeriodicSet {
                prefix_len: prefix.len(),
                prefix_bits: prefix,
                period_len: period.len(),
                period_bits: period,
            })
    }

    fn arb_set() -> impl Strategy<Value = PeriodicSet> {
        arb_raw().prop_map(|r| canonicalize(&r).unwrap())
    }

    proptest! {
        #[test]
        fn canonicalize_preserves_membership(r in arb_raw()) {
            let s = canonicalize(&r).unwrap();
            let window = 3 * (r.prefix_len + r.period_len) as u64;
            for n in 1..=window {
                prop_assert_eq!(s.contains(n), raw_member(&r, n));
            }
            prop_assert_eq!(canonicalize(&s.to_raw()).unwrap(), s);
        }

        #[test]
        fn boolean_laws(a in arb_set(), b in arb_set()) {
            prop_assert_eq!(a.complement().complement(), a.clone());
            prop_assert_eq!(
                a.union(&b).unwrap().complement(),
                a.complement().inter(&b.complement()).unwrap()
            );
            prop_assert_eq!(a.diff(&b).unwrap(), a.inter(&b.complement()).unwrap());
            prop_assert_eq!(
                a.symdiff(&b).unwrap(),
                a.diff(&b).unwrap().union(&b.diff(&a).unwrap()).unwrap()
            );
            prop_assert_eq!(a.diff_cardinality(&b), a.diff(&b).unwrap().finiteness().cardinality());
        }

        #[test]
        fn orbit_complement_duality(a in arb_set()) {
            prop_assume!(!a.is_empty() && !a.is_full());
            let t = a.classify_orbit().unwrap();
            prop_assert_eq!(a.is_finite(), matches!(t, OrbitType::FiniteOfSize(_)));
            let dual = match t {
                OrbitType::FiniteOfSize(k) => OrbitType::CofiniteOfCodim(k),
                OrbitType::CofiniteOfCodim(k) => OrbitType::FiniteOfSize(k),
                OrbitType::Balanced => OrbitType::Balanced,
            };
            prop_assert_eq!(a.complement().classify_orbit().unwrap(), dual);
        }

        #[test]
        fn split_partitions(a in arb_set()) {
            prop_assume!(!a.is_finite());
            let (x, y) = a.split_infinite().unwrap();
            prop_assert!(!x.is_finite() && !y.is_finite());
            prop_assert!(x.is_disjoint(&y));
            prop_assert_eq!(x.union(&y).unwrap(), a);
        }
    }
}
