//! Exhaustive generation of colored barred preferential arrangements.
//!
//! A structure on `{1..n}` has a special section (each element carries a color
//! in `1..=gamma`) followed by `lambda` sections, each an ordered list of
//! non-empty blocks whose elements carry colors in `1..=beta`.
//!
//! Generation assigns every element a location tag (a special color, or a
//! section together with a block color) and then walks the ordered set
//! partitions of each section's elements. Ordered set partitions are a
//! restricted growth string paired with a permutation of its blocks, so every
//! visited state is a valid structure.

use std::fmt;

use num_bigint::BigUint;
#[cfg(test)]
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::format;
use crate::numbers::{raw_egf, Params};
use crate::numeric::CountValue;

/// Element-to-color assignment, sorted by element.
pub type Assignment = Vec<(u32, u32)>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub entries: Assignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BpaStructure {
    pub n: u32,
    pub params: Params,
    pub special: Assignment,
    pub sections: Vec<Vec<Block>>,
}

impl BpaStructure {
    /// The structure with no elements: empty special section, `lambda` empty sections.
    pub fn empty(params: Params) -> Self {
        BpaStructure {
            n: 0,
            params,
            special: Vec::new(),
            sections: vec![Vec::new(); params.lambda as usize],
        }
    }

    /// Checks every structural invariant; `Ok` means the value could have
    /// been produced by [`enumerate`].
    pub fn validate(&self) -> std::result::Result<(), format::ParseError> {
        format::validate(self)
    }
}

impl fmt::Display for BpaStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format::format(self))
    }
}

pub const DEFAULT_MAX_COUNT: u64 = 100_000_000;

/// Refuses enumerations whose predicted size exceeds `max_count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_count: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_count: DEFAULT_MAX_COUNT,
        }
    }
}

impl EnumerationBudget {
    pub fn new(max_count: u64) -> Self {
        EnumerationBudget { max_count }
    }

    pub fn check(&self, predicted: &BigUint) -> Result<()> {
        if predicted > &BigUint::from(self.max_count) {
            return Err(Error::BudgetExceeded {
                predicted: predicted.to_string(),
                max_count: self.max_count,
            });
        }
        Ok(())
    }
}

fn predicted_count(n: u32, params: &Params) -> BigUint {
    let table = raw_egf(
        params.lambda,
        params.beta as u64,
        params.gamma as u64,
        n as usize,
    );
    table[n as usize]
        .to_biguint()
        .expect("counts are non-negative")
}

/// Ordered set partitions of one section's members.
#[derive(Debug, Clone)]
struct SectionWalk {
    members: Vec<u32>,
    rgs: Vec<u32>,
    order: Vec<u32>,
}

impl SectionWalk {
    fn reset(&mut self) {
        self.rgs.clear();
        self.rgs.resize(self.members.len(), 0);
        self.order.clear();
        if !self.members.is_empty() {
            self.order.push(0);
        }
    }

    fn advance(&mut self) -> bool {
        if next_permutation(&mut self.order) {
            return true;
        }
        if next_rgs(&mut self.rgs) {
            let blocks = self.rgs.iter().max().map_or(0, |m| m + 1);
            self.order.clear();
            self.order.extend(0..blocks);
            return true;
        }
        false
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

// Restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[..i]).
fn next_rgs(rgs: &mut [u32]) -> bool {
    let len = rgs.len();
    if len < 2 {
        return false;
    }
    let mut prefix_max = vec![0u32; len];
    for i in 1..len {
        prefix_max[i] = prefix_max[i - 1].max(rgs[i - 1]);
    }
    for i in (1..len).rev() {
        if rgs[i] <= prefix_max[i] {
            rgs[i] += 1;
            rgs[i + 1..].fill(0);
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    Fresh,
    Running,
    Done,
}

/// Streaming generator of every structure for one `(n, params)`.
#[derive(Debug, Clone)]
pub struct Enumerator {
    n: u32,
    params: Params,
    slots: u32,
    tags: Vec<u32>,
    sections: Vec<SectionWalk>,
    phase: Phase,
    predicted: BigUint,
}

impl Enumerator {
    fn new_unchecked(n: u32, params: Params) -> Self {
        let slots = params.gamma + params.lambda * params.beta;
        let sections = (0..params.lambda)
            .map(|_| SectionWalk {
                members: Vec::new(),
                rgs: Vec::new(),
                order: Vec::new(),
            })
            .collect();
        Enumerator {
            n,
            params,
            slots,
            tags: vec![0; n as usize],
            sections,
            phase: Phase::Fresh,
            predicted: predicted_count(n, &params),
        }
    }

    /// Number of structures this stream will yield.
    pub fn predicted(&self) -> &BigUint {
        &self.predicted
    }

    fn route(&mut self) {
        for s in &mut self.sections {
            s.members.clear();
        }
        let (gamma, beta) = (self.params.gamma, self.params.beta);
        for (e, &t) in self.tags.iter().enumerate() {
            if t >= gamma {
                self.sections[((t - gamma) / beta) as usize]
                    .members
                    .push(e as u32);
            }
        }
        for s in &mut self.sections {
            s.reset();
        }
    }

    fn advance_tags(&mut self) -> bool {
        for t in self.tags.iter_mut() {
            *t += 1;
            if *t < self.slots {
                return true;
            }
            *t = 0;
        }
        false
    }

    /// Moves to the next state without building it. Returns `false` when exhausted.
    fn step(&mut self) -> bool {
        match self.phase {
            Phase::Done => false,
            Phase::Fresh => {
                if self.n > 0 && self.slots == 0 {
                    self.phase = Phase::Done;
                    return false;
                }
                self.route();
                self.phase = Phase::Running;
                true
            }
            Phase::Running => {
                for s in self.sections.iter_mut().rev() {
                    if s.advance() {
                        return true;
                    }
                    s.reset();
                }
                if self.advance_tags() {
                    self.route();
                    true
                } else {
                    self.phase = Phase::Done;
                    false
                }
            }
        }
    }

    fn current(&self) -> BpaStructure {
        let (gamma, beta) = (self.params.gamma, self.params.beta);
        let special = self
            .tags
            .iter()
            .enumerate()
            .filter(|(_, &t)| t < gamma)
            .map(|(e, &t)| (e as u32 + 1, t + 1))
            .collect();
        let sections = self
            .sections
            .iter()
            .map(|s| {
                s.order
                    .iter()
                    .map(|&b| Block {
                        entries: s
                            .members
                            .iter()
                            .zip(&s.rgs)
                            .filter(|(_, &r)| r == b)
                            .map(|(&e, _)| (e + 1, (self.tags[e as usize] - gamma) % beta + 1))
                            .collect(),
                    })
                    .collect()
            })
            .collect();
        BpaStructure {
            n: self.n,
            params: self.params,
            special,
            sections,
        }
    }

    /// Bitmask of the `beta`-wide color bands of the special section that are
    /// used, counting bands from color `base + 1`.
    fn special_bands(&self, base: u32, beta: u32) -> u64 {
        self.tags
            .iter()
            .filter(|&&t| t >= base && t < self.params.gamma)
            .fold(0u64, |m, &t| m | 1 << ((t - base) / beta))
    }

    /// Drains the stream, counting without materializing structures.
    pub fn count_remaining(mut self) -> u64 {
        let mut total = 0u64;
        while self.step() {
            total += 1;
        }
        total
    }
}

impl Iterator for Enumerator {
    type Item = BpaStructure;

    fn next(&mut self) -> Option<BpaStructure> {
        if self.step() {
            Some(self.current())
        } else {
            None
        }
    }
}

/// Stream of every structure on `{1..n}` for `params`.
pub fn enumerate(n: u32, params: &Params, budget: &EnumerationBudget) -> Result<Enumerator> {
    let e = Enumerator::new_unchecked(n, *params);
    budget.check(e.predicted())?;
    Ok(e)
}

/// Number of structures, computed by walking the stream.
pub fn count(n: u32, params: &Params, budget: &EnumerationBudget) -> Result<CountValue> {
    Ok(BigUint::from(
        enumerate(n, params, budget)?.count_remaining(),
    ))
}

/// Sum over `k = 0..=n` of the structures with `lambda - 1` ordinary sections
/// whose special section has `gamma + k beta` compartments, grouped into `k`
/// bands of `beta` (after the first `gamma`) that are each hit at least once.
pub fn count_band_restricted(
    n: u32,
    lambda: u32,
    beta: u32,
    gamma: u32,
    budget: &EnumerationBudget,
) -> Result<CountValue> {
    if lambda == 0 || beta == 0 {
        return Err(Error::InvalidParams(
            "restricted count needs lambda >= 1 and beta >= 1".into(),
        ));
    }
    let streams: Vec<(u32, Enumerator)> = (0..=n)
        .map(|k| {
            let params = Params::unchecked(lambda - 1, beta, gamma + k * beta);
            (k, Enumerator::new_unchecked(n, params))
        })
        .collect();
    let predicted: BigUint = streams.iter().map(|(_, e)| e.predicted().clone()).sum();
    budget.check(&predicted)?;
    let mut total = 0u64;
    for (k, mut e) in streams {
        let full = if k == 0 { 0 } else { (1u64 << k) - 1 };
        while e.step() {
            if e.special_bands(gamma, beta) == full {
                total += 1;
            }
        }
    }
    Ok(BigUint::from(total))
}

/// Fails if two structures in the stream share a canonical string or the
/// stream length differs from the prediction. Returns the number seen.
pub fn check_distinct(n: u32, params: &Params, budget: &EnumerationBudget) -> Result<u64> {
    let e = enumerate(n, params, budget)?;
    let predicted = e.predicted().clone();
    let mut seen = std::collections::HashSet::new();
    for s in e {
        if !seen.insert(format::format(&s)) {
            return Err(Error::OracleMismatch(format!("duplicate structure {s}")));
        }
    }
    let total = seen.len() as u64;
    if BigUint::from(total) != predicted {
        return Err(Error::OracleMismatch(format!(
            "stream yielded {total} structures for {params} at n={n}"
        )));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(lambda: u32, beta: u32, gamma: u32) -> Params {
        Params::new(lambda, beta, gamma).unwrap()
    }

    fn budget() -> EnumerationBudget {
        EnumerationBudget::default()
    }

    fn count_of(n: u32, params: Params) -> u64 {
        count(n, &params, &budget()).unwrap().to_u64().unwrap()
    }

    #[test]
    fn rgs_walk_counts_bell_numbers() {
        for (len, bell) in [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)] {
            let mut rgs = vec![0; len];
            let mut c = 1;
            while next_rgs(&mut rgs) {
                c += 1;
            }
            assert_eq!(c, bell);
        }
    }

    #[test]
    fn permutation_walk_counts_factorials() {
        let mut v = vec![0, 1, 2, 3];
        let mut c = 1;
        while next_permutation(&mut v) {
            c += 1;
        }
        assert_eq!(c, 24);
    }

    #[test]
    fn empty_set_has_one_structure() {
        for params in [p(1, 1, 0), p(0, 1, 2), p(3, 2, 1)] {
            let all: Vec<_> = enumerate(0, &params, &budget()).unwrap().collect();
            assert_eq!(all, vec![BpaStructure::empty(params)]);
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate(2, &p(2, 1, 0), &budget()).unwrap().count(), 8);
        assert_eq!(enumerate(2, &p(1, 2, 0), &budget()).unwrap().count(), 12);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_of(3, p(1, 1, 0)), 13);
        assert_eq!(count_of(2, p(1, 1, 2)), 11);
        assert_eq!(count_of(1, p(0, 1, 3)), 3);
    }

    #[test]
    fn band_restricted_examples() {
        let b = budget();
        assert_eq!(
            count_band_restricted(2, 1, 1, 0, &b).unwrap(),
            BigUint::from(3u32)
        );
        assert_eq!(
            count_band_restricted(1, 1, 1, 1, &b).unwrap(),
            BigUint::from(2u32)
        );
        for beta in 1..=3 {
            for gamma in 0..=2 {
                assert_eq!(
                    count_band_restricted(0, 1, beta, gamma, &b).unwrap(),
                    BigUint::from(1u32)
                );
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let tight = EnumerationBudget::new(10);
        assert!(matches!(
            enumerate(3, &p(1, 1, 0), &tight),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(enumerate(2, &p(1, 1, 0), &tight).is_ok());
        assert!(count_band_restricted(4, 2, 2, 2, &tight).is_err());
    }

    #[test]
    fn structures_are_valid_and_distinct() {
        for lambda in 0..=2 {
            for beta in 1..=2 {
                for gamma in 0..=2 {
                    let Ok(params) = Params::new(lambda, beta, gamma) else {
                        continue;
                    };
                    for n in 0..=4 {
                        for s in enumerate(n, &params, &budget()).unwrap() {
                            s.validate().unwrap();
                        }
                        check_distinct(n, &params, &budget()).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn first_structure_layout() {
        let first = enumerate(2, &p(1, 1, 2), &budget())
            .unwrap()
            .next()
            .unwrap();
        assert_eq!(first.special, vec![(1, 1), (2, 1)]);
        assert_eq!(first.sections, vec![Vec::<Block>::new()]);
    }
}
