//! Bijections of N with finite descriptions.
//!
//! Beyond a threshold `N` a [`ComputablePermutation`] moves every residue
//! class modulo `p` by a fixed shift, so the class of `r` lands in the class of
//! `rho(r)`. Arguments up to `N` may be redirected by a finite patch. The class
//! is closed under composition and inversion and maps eventually periodic sets
//! to eventually periodic sets, which makes [`pushforward`] exact.
//!
//! Why the validation window is enough: write `K = max |k_r|`, so every tail
//! shift satisfies `|delta_r| < p(K+1)`. Tail points never collide with each
//! other because distinct classes go to distinct classes and each class is
//! translated. A collision therefore involves some `n <= N` whose image is at
//! most `M`, the largest low image, and its partner lies below `M + p(K+1)`.
//! Every `m > N + p(K+1)` is hit by the tail point `m - delta`, so only smaller
//! values need an explicit preimage, and those preimages lie below
//! `N + 2p(K+1)`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Mutex;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setalg::{PeriodicSet, DEFAULT_PERIOD_LIMIT};

/// Largest window the validator is willing to scan.
const MAX_VALIDATION_WINDOW: u64 = 1 << 22;

/// One residue class rule: `n ≡ from (mod p)` maps to `n + (to - from) + p * offset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassMap {
    pub from: u64,
    pub to: u64,
    pub offset: i64,
}

/// Unvalidated permutation description, as exchanged in text form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermSpec {
    pub modulus: u64,
    pub threshold: u64,
    pub classes: Vec<ClassMap>,
    #[serde(default)]
    pub patch: BTreeMap<u64, u64>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ComputablePermutation {
    threshold: u64,
    modulus: u64,
    /// `shifts[r] = rho(r) - r + p * k_r`.
    shifts: Vec<i64>,
    patch: BTreeMap<u64, u64>,
    // derived from the fields above
    low_inverse: BTreeMap<u64, u64>,
    rho_inverse: Vec<u64>,
}

/// Validates a description and returns the normalized permutation.
pub fn validate(spec: &PermSpec) -> Result<ComputablePermutation> {
    let p = spec.modulus;
    if p == 0 {
        return Err(Error::MalformedRepresentation("modulus must be positive".into()));
    }
    let mut shifts: Vec<Option<i64>> = vec![None; p as usize];
    let mut targets = HashSet::new();
    for class in &spec.classes {
        if class.from >= p || class.to >= p {
            return Err(Error::MalformedRepresentation(format!(
                "class {} -> {} outside residues mod {p}",
                class.from, class.to
            )));
        }
        let slot = &mut shifts[class.from as usize];
        if slot.is_some() {
            return Err(Error::MalformedRepresentation(format!(
                "residue {} has two class rules",
                class.from
            )));
        }
        *slot = Some(class.to as i64 - class.from as i64 + p as i64 * class.offset);
        targets.insert(class.to);
    }
    let shifts: Vec<i64> = shifts
        .into_iter()
        .enumerate()
        .map(|(r, s)| s.ok_or_else(|| Error::MalformedRepresentation(format!("residue {r} has no class rule"))))
        .collect::<Result<_>>()?;
    if targets.len() != p as usize {
        return Err(Error::ResidueMapNotBijective);
    }
    for (&n, &m) in &spec.patch {
        if n == 0 || m == 0 {
            return Err(Error::DomainError(0));
        }
        if n > spec.threshold {
            return Err(Error::MalformedRepresentation(format!(
                "patch entry {n} lies above the threshold {}",
                spec.threshold
            )));
        }
    }
    let candidate = ComputablePermutation::assemble(spec.threshold, p, shifts, spec.patch.clone());
    candidate.check_bijective()?;
    Ok(candidate.normalize())
}

impl ComputablePermutation {
    fn assemble(threshold: u64, modulus: u64, shifts: Vec<i64>, patch: BTreeMap<u64, u64>) -> Self {
        let mut perm = ComputablePermutation {
            threshold,
            modulus,
            shifts,
            patch,
            low_inverse: BTreeMap::new(),
            rho_inverse: Vec::new(),
        };
        perm.low_inverse = (1..=threshold)
            .map(|n| (perm.apply_raw(n), n))
            .filter(|&(m, _)| m > 0)
            .map(|(m, n)| (m as u64, n))
            .collect();
        let mut rho_inverse = vec![0; modulus as usize];
        for r in 0..modulus {
            let to = (r as i64 + perm.shifts[r as usize]).rem_euclid(modulus as i64) as usize;
            rho_inverse[to] = r;
        }
        perm.rho_inverse = rho_inverse;
        perm
    }

    fn apply_raw(&self, n: u64) -> i64 {
        if n <= self.threshold {
            if let Some(&m) = self.patch.get(&n) {
                return m as i64;
            }
        }
        self.tail_raw(n)
    }

    fn tail_raw(&self, n: u64) -> i64 {
        n as i64 + self.shifts[(n % self.modulus) as usize]
    }

    fn max_offset(&self) -> u64 {
        let p = self.modulus as i64;
        self.shifts
            .iter()
            .enumerate()
            .map(|(r, &d)| {
                let to = (r as i64 + d).rem_euclid(p);
                ((d - (to - r as i64)) / p).unsigned_abs()
            })
            .max()
            .unwrap_or(0)
    }

    fn max_positive_shift(&self) -> u64 {
        self.shifts.iter().copied().max().unwrap_or(0).max(0) as u64
    }

    fn max_negative_shift(&self) -> u64 {
        self.shifts.iter().copied().min().unwrap_or(0).min(0).unsigned_abs()
    }

    fn max_low_image(&self) -> u64 {
        self.low_inverse.keys().next_back().copied().unwrap_or(0)
    }

    fn check_bijective(&self) -> Result<()> {
        let n = self.threshold;
        let p = self.modulus;
        let reach = p * (self.max_offset() + 1);
        let spec_window = n + p * (self.max_offset() + 2) + p;
        let max_low = (1..=n).map(|x| self.apply_raw(x)).max().unwrap_or(0).max(0) as u64;
        let window = spec_window.max(max_low + reach).max(n + 2 * reach);
        let target = (spec_window - reach).max(n + reach);
        if window > MAX_VALIDATION_WINDOW {
            return Err(Error::MalformedRepresentation(format!(
                "description needs a validation window of {window}"
            )));
        }
        let mut seen: HashMap<u64, u64> = HashMap::new();
        for x in 1..=window {
            let image = self.apply_raw(x);
            if image < 1 {
                return Err(Error::NonPositiveImage(x));
            }
            if let Some(&first) = seen.get(&(image as u64)) {
                return Err(Error::NotInjective {
                    first,
                    second: x,
                    image: image as u64,
                });
            }
            seen.insert(image as u64, x);
        }
        if let Some(m) = (1..=target).find(|m| !seen.contains_key(m)) {
            return Err(Error::NotSurjective(m));
        }
        Ok(())
    }

    /// Minimal modulus, minimal threshold, patch entries only where the tail
    /// rule disagrees.
    fn normalize(&self) -> Self {
        let p = self.modulus as usize;
        let d = (1..=p)
            .filter(|d| p.is_multiple_of(*d))
            .find(|&d| (0..p).all(|r| self.shifts[r] == self.shifts[r % d]))
            .unwrap_or(p);
        let shifts: Vec<i64> = self.shifts[..d].to_vec();
        let rule = |x: u64| x as i64 + shifts[(x % d as u64) as usize];
        let patch: BTreeMap<u64, u64> = (1..=self.threshold)
            .filter_map(|x| {
                let image = self.apply_raw(x);
                (image != rule(x)).then_some((x, image as u64))
            })
            .collect();
        let threshold = patch.keys().next_back().copied().unwrap_or(0);
        ComputablePermutation::assemble(threshold, d as u64, shifts, patch)
    }

    /// Samples `f` on `1..=threshold` and on one representative per class
    /// above it. `f` must be residue-affine modulo `modulus` beyond `threshold`.
    fn from_pointwise(threshold: u64, modulus: u64, f: impl Fn(u64) -> u64) -> Self {
        let shifts = (0..modulus)
            .map(|r| {
                let start = threshold + 1;
                let rep = start + (r + modulus - start % modulus) % modulus;
                f(rep) as i64 - rep as i64
            })
            .collect();
        let patch = (1..=threshold).map(|n| (n, f(n))).collect();
        ComputablePermutation::assemble(threshold, modulus, shifts, patch).normalize()
    }

    pub fn identity() -> Self {
        ComputablePermutation::assemble(0, 1, vec![0], BTreeMap::new())
    }

    /// Finitely supported permutation given by its non-fixed points.
    pub fn from_finite_map(map: &BTreeMap<u64, u64>) -> Result<Self> {
        let threshold = map.iter().flat_map(|(&a, &b)| [a, b]).max().unwrap_or(0);
        validate(&PermSpec {
            modulus: 1,
            threshold,
            classes: vec![ClassMap {
                from: 0,
                to: 0,
                offset: 0,
            }],
            patch: map.clone(),
        })
    }

    pub fn transposition(a: u64, b: u64) -> Result<Self> {
        ComputablePermutation::from_finite_map(&BTreeMap::from([(a, b), (b, a)]))
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn patch(&self) -> &BTreeMap<u64, u64> {
        &self.patch
    }

    /// Description in exchange form, classes listed by residue.
    pub fn spec(&self) -> PermSpec {
        let p = self.modulus as i64;
        let classes = self
            .shifts
            .iter()
            .enumerate()
            .map(|(r, &d)| {
                let r = r as i64;
                let to = (r + d).rem_euclid(p);
                ClassMap {
                    from: r as u64,
                    to: to as u64,
                    offset: (d - (to - r)) / p,
                }
            })
            .collect();
        PermSpec {
            modulus: self.modulus,
            threshold: self.threshold,
            classes,
            patch: self.patch.clone(),
        }
    }

    /// Image of `n`.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn apply(&self, n: u64) -> u64 {
        assert!(n >= 1, "permutations act on positive integers");
        self.apply_raw(n) as u64
    }

    /// Preimage of `m`.
    ///
    /// # Panics
    /// If `m == 0`.
    pub fn apply_inverse(&self, m: u64) -> u64 {
        assert!(m >= 1, "permutations act on positive integers");
        if let Some(&n) = self.low_inverse.get(&m) {
            return n;
        }
        let r = self.rho_inverse[(m % self.modulus) as usize];
        (m as i64 - self.shifts[r as usize]) as u64
    }

    pub fn checked_apply(&self, n: i64) -> Result<u64> {
        if n < 1 {
            return Err(Error::DomainError(n));
        }
        Ok(self.apply(n as u64))
    }

    pub fn checked_apply_inverse(&self, m: i64) -> Result<u64> {
        if m < 1 {
            return Err(Error::DomainError(m));
        }
        Ok(self.apply_inverse(m as u64))
    }

    /// `n ↦ self(other(n))`.
    pub fn compose(&self, other: &ComputablePermutation) -> Result<ComputablePermutation> {
        let modulus = self.modulus.lcm(&other.modulus);
        if modulus > DEFAULT_PERIOD_LIMIT {
            return Err(Error::PeriodLimitExceeded {
                needed: modulus,
                limit: DEFAULT_PERIOD_LIMIT,
            });
        }
        let threshold = other.threshold.max(self.threshold + other.max_negative_shift());
        let composite = ComputablePermutation::from_pointwise(threshold, modulus, |n| self.apply(other.apply(n)));
        composite.check_bijective()?;
        Ok(composite)
    }

    pub fn invert(&self) -> Result<ComputablePermutation> {
        let inverse =
            ComputablePermutation::from_pointwise(self.inverse_threshold(), self.modulus, |m| self.apply_inverse(m));
        inverse.check_bijective()?;
        Ok(inverse)
    }

    /// Beyond this point the inverse follows the tail rule.
    fn inverse_threshold(&self) -> u64 {
        self.max_low_image().max(self.threshold + self.max_positive_shift())
    }

    pub fn is_identity(&self) -> bool {
        *self == ComputablePermutation::identity()
    }
}

/// Exact image `{s(n) : n ∈ set}`.
pub fn pushforward(s: &ComputablePermutation, set: &PeriodicSet) -> Result<PeriodicSet> {
    let period = s.modulus.lcm(&(set.period_len() as u64));
    if period > DEFAULT_PERIOD_LIMIT {
        return Err(Error::PeriodLimitExceeded {
            needed: period,
            limit: DEFAULT_PERIOD_LIMIT,
        });
    }
    let len = s
        .inverse_threshold()
        .max(set.prefix_len() as u64 + s.max_positive_shift());
    Ok(PeriodicSet::from_indicator(len, period, |m| {
        set.contains(s.apply_inverse(m))
    }))
}

impl fmt::Debug for ComputablePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ComputablePermutation")
            .field("threshold", &self.threshold)
            .field("modulus", &self.modulus)
            .field("shifts", &self.shifts)
            .field("patch", &self.patch)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomPermConfig {
    pub max_modulus: u64,
    pub max_offset: u64,
    /// Extra exceptional region on top of the points the tail rule would
    /// send outside N.
    pub max_patch: u64,
    pub seed: u64,
}

const GENERATION_ATTEMPTS: usize = 1000;

/// Deterministic random permutation for a fixed seed.
pub fn random_permutation(config: &RandomPermConfig) -> Result<ComputablePermutation> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    random_permutation_with(&mut rng, config)
}

pub fn random_permutation_with<R: Rng>(rng: &mut R, config: &RandomPermConfig) -> Result<ComputablePermutation> {
    if config.max_modulus == 0 {
        return Err(Error::BadParameters("max_modulus must be positive".into()));
    }
    let k_max = config.max_offset as i64;
    for _ in 0..GENERATION_ATTEMPTS {
        let p = rng.gen_range(1..=config.max_modulus);
        let mut rho: Vec<u64> = (0..p).collect();
        rho.shuffle(rng);
        // offsets must sum to zero, or the tail misses a different number of
        // values than the low region can supply
        let mut offsets: Vec<i64> = (1..p).map(|_| rng.gen_range(-k_max..=k_max)).collect();
        let last = -offsets.iter().sum::<i64>();
        if last.abs() > k_max {
            continue;
        }
        offsets.push(last);
        let shifts: Vec<i64> = (0..p as usize)
            .map(|r| rho[r] as i64 - r as i64 + p as i64 * offsets[r])
            .collect();
        let reach = p * (config.max_offset + 1);
        let forced = (1..=reach + p)
            .filter(|&n| n as i64 + shifts[(n % p) as usize] <= 0)
            .max()
            .unwrap_or(0);
        let threshold = forced + rng.gen_range(0..=config.max_patch);
        let hit: HashSet<u64> = (threshold + 1..=threshold + 2 * reach + p)
            .map(|n| (n as i64 + shifts[(n % p) as usize]) as u64)
            .collect();
        let mut missed: Vec<u64> = (1..=threshold + reach).filter(|m| !hit.contains(m)).collect();
        if missed.len() as u64 != threshold {
            continue;
        }
        missed.shuffle(rng);
        let patch = (1..=threshold).zip(missed).collect();
        let spec = PermSpec {
            modulus: p,
            threshold,
            classes: (0..p)
                .map(|r| ClassMap {
                    from: r,
                    to: rho[r as usize],
                    offset: offsets[r as usize],
                })
                .collect(),
            patch,
        };
        if let Ok(perm) = validate(&spec) {
            return Ok(perm);
        }
    }
    Err(Error::GenerationFailed(GENERATION_ATTEMPTS))
}

type PointOracle = dyn Fn(u64) -> Result<u64> + Send + Sync;

#[derive(Default)]
struct Memo {
    forward: BTreeMap<u64, u64>,
    backward: HashMap<u64, u64>,
}

/// A permutation known only through point queries. Answers are memoized and
/// checked for injectivity as they arrive.
pub struct QueryBackedPermutation {
    oracle: Box<PointOracle>,
    inverse: Option<Box<PointOracle>>,
    window: Option<u64>,
    memo: Mutex<Memo>,
}

impl QueryBackedPermutation {
    pub fn new(oracle: impl Fn(u64) -> Result<u64> + Send + Sync + 'static) -> Self {
        QueryBackedPermutation {
            oracle: Box::new(oracle),
            inverse: None,
            window: None,
            memo: Mutex::new(Memo::default()),
        }
    }

    pub fn with_inverse(mut self, inverse: impl Fn(u64) -> Result<u64> + Send + Sync + 'static) -> Self {
        self.inverse = Some(Box::new(inverse));
        self
    }

    /// Restricts queries to `1..=window`.
    pub fn with_window(mut self, window: u64) -> Self {
        self.window = Some(window);
        self
    }

    pub fn from_permutation(s: ComputablePermutation) -> Self {
        let t = s.clone();
        QueryBackedPermutation::new(move |n| Ok(s.apply(n))).with_inverse(move |m| Ok(t.apply_inverse(m)))
    }

    pub fn window(&self) -> Option<u64> {
        self.window
    }

    pub fn apply(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::DomainError(0));
        }
        if let Some(w) = self.window {
            if n > w {
                return Err(Error::PreconditionViolated(format!(
                    "{n} lies outside the query window 1..={w}"
                )));
            }
        }
        if let Some(&m) = self.memo.lock().unwrap().forward.get(&n) {
            return Ok(m);
        }
        let m = (self.oracle)(n)?;
        self.record(n, m)?;
        Ok(m)
    }

    /// Preimage from the memo table or the inverse oracle; `None` if unknown.
    pub fn apply_inverse(&self, m: u64) -> Result<Option<u64>> {
        if let Some(&n) = self.memo.lock().unwrap().backward.get(&m) {
            return Ok(Some(n));
        }
        match &self.inverse {
            Some(inverse) => {
                let n = inverse(m)?;
                self.record(n, m)?;
                Ok(Some(n))
            }
            None => Ok(None),
        }
    }

    fn record(&self, n: u64, m: u64) -> Result<()> {
        let mut memo = self.memo.lock().unwrap();
        if let Some(&known) = memo.forward.get(&n) {
            if known != m {
                return Err(Error::InconsistentOracle(format!("{n} answered both {known} and {m}")));
            }
            return Ok(());
        }
        if let Some(&other) = memo.backward.get(&m) {
            return Err(Error::NotInjective {
                first: other.min(n),
                second: other.max(n),
                image: m,
            });
        }
        memo.forward.insert(n, m);
        memo.backward.insert(m, n);
        Ok(())
    }

    /// Memoized points in ascending argument order.
    pub fn memoized(&self) -> Vec<(u64, u64)> {
        self.memo
            .lock()
            .unwrap()
            .forward
            .iter()
            .map(|(&n, &m)| (n, m))
            .collect()
    }
}

impl fmt::Debug for QueryBackedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QueryBackedPermutation")
            .field("window", &self.window)
            .field("memoized", &self.memo.lock().unwrap().forward.len())
            .finish()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn class(from: u64, to: u64, offset: i64) -> ClassMap {
        ClassMap { from, to, offset }
    }

    pub(crate) fn pair_swap() -> ComputablePermutation {
        validate(&PermSpec {
            modulus: 2,
            threshold: 0,
            classes: vec![class(0, 1, -1), class(1, 0, 1)],
            patch: BTreeMap::new(),
        })
        .unwrap()
    }

    #[test]
    fn identity_is_valid() {
        let id = validate(&PermSpec {
            modulus: 1,
            threshold: 0,
            classes: vec![class(0, 0, 0)],
            patch: BTreeMap::new(),
        })
        .unwrap();
        assert_eq!(id, ComputablePermutation::identity());
        assert!(id.is_identity());
    }

    #[test]
    fn pair_swap_maps_odds_to_evens() {
        let s = pair_swap();
        assert_eq!(s.apply(1), 2);
        assert_eq!(s.apply(2), 1);
        assert_eq!(s.apply(9), 10);
        assert_eq!(pushforward(&s, &PeriodicSet::odds()).unwrap(), PeriodicSet::evens());
        assert_eq!(pushforward(&s, &PeriodicSet::evens()).unwrap(), PeriodicSet::odds());
        assert_eq!(s.apply_inverse(4), 3);
    }

    #[test]
    fn shift_by_two_is_not_surjective() {
        let err = validate(&PermSpec {
            modulus: 2,
            threshold: 0,
            classes: vec![class(0, 0, 1), class(1, 1, 1)],
            patch: BTreeMap::new(),
        })
        .unwrap_err();
        assert_eq!(err, Error::NotSurjective(1));
    }

    #[test]
    fn validation_errors() {
        let residue_clash = PermSpec {
            modulus: 2,
            threshold: 0,
            classes: vec![class(0, 0, 0), class(1, 0, 0)],
            patch: BTreeMap::new(),
        };
        assert_eq!(validate(&residue_clash), Err(Error::ResidueMapNotBijective));

        let collision = PermSpec {
            modulus: 1,
            threshold: 1,
            classes: vec![class(0, 0, 0)],
            patch: BTreeMap::from([(1, 2)]),
        };
        assert_eq!(
            validate(&collision),
            Err(Error::NotInjective {
                first: 1,
                second: 2,
                image: 2
            })
        );

        let below_one = PermSpec {
            modulus: 1,
            threshold: 0,
            classes: vec![class(0, 0, -1)],
            patch: BTreeMap::new(),
        };
        assert_eq!(validate(&below_one), Err(Error::NonPositiveImage(1)));

        let missing = PermSpec {
            modulus: 2,
            threshold: 0,
            classes: vec![class(0, 0, 0)],
            patch: BTreeMap::new(),
        };
        assert!(matches!(validate(&missing), Err(Error::MalformedRepresentation(_))));
    }

    #[test]
    fn large_patch_image_collision_is_caught() {
        // 1 -> 100 collides with the tail point 100 -> 100
        let spec = PermSpec {
            modulus: 1,
            threshold: 1,
            classes: vec![class(0, 0, 0)],
            patch: BTreeMap::from([(1, 100)]),
        };
        assert!(matches!(validate(&spec), Err(Error::NotInjective { image: 100, .. })));
    }

    #[test]
    fn transposition_examples() {
        let t = ComputablePermutation::transposition(1, 2).unwrap();
        assert_eq!(t.apply(1), 2);
        assert_eq!(t.apply(7), 7);
        assert_eq!(t.invert().unwrap(), t);
        assert_eq!(t.checked_apply(0), Err(Error::DomainError(0)));
    }

    #[test]
    fn compose_examples() {
        let s = pair_swap();
        assert_eq!(s.compose(&s).unwrap(), ComputablePermutation::identity());
        let t = ComputablePermutation::transposition(1, 2).unwrap();
        let st = s.compose(&t).unwrap();
        for n in 1..=64 {
            assert_eq!(st.apply(n), s.apply(t.apply(n)));
        }
    }

    #[test]
    fn normalization_reduces_modulus_and_threshold() {
        let spec = PermSpec {
            modulus: 4,
            threshold: 3,
            classes: vec![class(0, 0, 0), class(1, 1, 0), class(2, 2, 0), class(3, 3, 0)],
            patch: BTreeMap::from([(1, 1), (2, 2), (3, 3)]),
        };
        assert_eq!(validate(&spec).unwrap(), ComputablePermutation::identity());
    }

    #[test]
    fn random_is_deterministic() {
        let config = RandomPermConfig {
            max_modulus: 2,
            max_offset: 1,
            max_patch: 4,
            seed: 1,
        };
        let a = random_permutation(&config).unwrap();
        let b = random_permutation(&config).unwrap();
        assert_eq!(a, b);
        assert_eq!(validate(&a.spec()).unwrap(), a);
    }

    /// Bijectivity on a window, checked by brute force without `apply_inverse`.
    fn window_bijective(s: &ComputablePermutation, window: u64, slack: u64) -> bool {
        let images: Vec<u64> = (1..=window + slack).map(|n| s.apply(n)).collect();
        let distinct: HashSet<u64> = images.iter().copied().collect();
        distinct.len() == images.len() && (1..=window).all(|m| distinct.contains(&m))
    }

    #[test]
    fn hundred_seeds_are_bijective() {
        for seed in 0..100 {
            let config = RandomPermConfig {
                max_modulus: 6,
                max_offset: 3,
                max_patch: 8,
                seed,
            };
            let s = random_permutation(&config).unwrap();
            assert!(window_bijective(&s, 256, 2 * 6 * 4), "seed {seed}: {s:?}");
        }
    }

    #[test]
    fn query_backed_memo_and_injectivity() {
        let q = QueryBackedPermutation::new(|n| Ok(if n == 3 { 1 } else { n }));
        assert_eq!(q.apply(1), Ok(1));
        assert_eq!(q.apply(1), Ok(1));
        assert_eq!(
            q.apply(3),
            Err(Error::NotInjective {
                first: 1,
                second: 3,
                image: 1
            })
        );
        assert_eq!(q.apply_inverse(1), Ok(Some(1)));
        assert_eq!(q.apply_inverse(5), Ok(None));

        let windowed = QueryBackedPermutation::from_permutation(pair_swap()).with_window(4);
        assert_eq!(windowed.apply(4), Ok(3));
        assert!(matches!(windowed.apply(5), Err(Error::PreconditionViolated(_))));
        assert_eq!(windowed.apply_inverse(10), Ok(Some(9)));
        assert_eq!(windowed.memoized(), vec![(4, 3), (9, 10)]);
    }

    fn arb_perm() -> impl Strategy<Value = ComputablePermutation> {
        (1u64..=4, 0u64..=2, 0u64..=4, any::<u64>()).prop_map(|(m, o, p, seed)| {
            random_permutation(&RandomPermConfig {
                max_modulus: m,
                max_offset: o,
                max_patch: p,
                seed,
            })
            .unwrap()
        })
    }

    fn arb_set() -> impl Strategy<Value = PeriodicSet> {
        (
            proptest::collection::vec(any::<bool>(), 0..8),
            proptest::collection::vec(any::<bool>(), 1..6),
        )
            .prop_map(|(a, b)| PeriodicSet::from_parts(a, b).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_is_pointwise_consistent(s in arb_perm()) {
            let inv = s.invert().unwrap();
            for n in 1..=1024 {
                prop_assert_eq!(s.apply_inverse(s.apply(n)), n);
                prop_assert_eq!(inv.apply(s.apply(n)), n);
            }
            let id = s.compose(&inv).unwrap();
            prop_assert!(id.is_identity());
        }

        #[test]
        fn compose_is_pointwise(s in arb_perm(), t in arb_perm()) {
            let st = s.compose(&t).unwrap();
            for n in 1..=512 {
                prop_assert_eq!(st.apply(n), s.apply(t.apply(n)));
            }
            prop_assert_eq!(validate(&st.spec()).unwrap(), st);
        }

        #[test]
        fn pushforward_laws(s in arb_perm(), t in arb_perm(), set in arb_set()) {
            let image = pushforward(&s, &set).unwrap();
            for n in 1..=512 {
                prop_assert_eq!(image.contains(s.apply(n)), set.contains(n));
            }
            let st = s.compose(&t).unwrap();
            prop_assert_eq!(
                pushforward(&st, &set).unwrap(),
                pushforward(&s, &pushforward(&t, &set).unwrap()).unwrap()
            );
            prop_assert_eq!(
                pushforward(&s, &set.complement()).unwrap(),
                image.complement()
            );
            if !set.is_empty() && !set.is_full() {
                prop_assert_eq!(image.classify_orbit(), set.classify_orbit());
            }
        }
    }
}
