//! Finitely presented commutative monoids.
//!
//! Words are commutative, so they are multidegrees in `N^{n_gens}`. Equality
//! is decided by rewriting: against confluent oriented rules when a
//! confluence certificate has been computed, otherwise by a bounded
//! bidirectional search that reports budget exhaustion rather than guessing.

use crate::error::{Budget, Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};

pub type Word = Vec<u32>;

fn word_deg(w: &Word) -> u64 {
    w.iter().map(|&x| x as u64).sum()
}

fn deglex_less(a: &Word, b: &Word) -> bool {
    (word_deg(a), a) < (word_deg(b), b)
}

fn fits(pattern: &Word, w: &Word) -> bool {
    pattern.iter().zip(w).all(|(p, x)| p <= x)
}

fn replace(w: &Word, from: &Word, to: &Word) -> Word {
    w.iter()
        .zip(from)
        .zip(to)
        .map(|((x, f), t)| x - f + t)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpMonoid {
    pub n_gens: usize,
    pub relations: Vec<(Word, Word)>,
    /// Oriented, certified-confluent rules (left > right in deglex).
    /// Present only when `certify_confluence` succeeded.
    confluent_rules: Option<Vec<(Word, Word)>>,
}

impl FpMonoid {
    pub fn new(n_gens: usize, relations: Vec<(Word, Word)>) -> Result<Self> {
        for (l, r) in &relations {
            if l.len() != n_gens || r.len() != n_gens {
                return Err(Error::invalid("relation word length must equal generator count"));
            }
        }
        let relations: Vec<(Word, Word)> = relations.into_iter().filter(|(l, r)| l != r).collect();
        Ok(FpMonoid { n_gens, relations, confluent_rules: None })
    }

    /// The additive integers presented as `<a, b | ab = 1>`.
    pub fn integers() -> Self {
        FpMonoid::new(2, vec![(vec![1, 1], vec![0, 0])]).unwrap()
    }

    /// Free presentation of `Z/n`: one generator `a` with `a^n = 1`.
    pub fn cyclic(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("cyclic order must be positive"));
        }
        FpMonoid::new(1, vec![(vec![n], vec![0])])
    }

    pub fn unit_word(&self) -> Word {
        vec![0; self.n_gens]
    }

    pub fn has_confluence_certificate(&self) -> bool {
        self.confluent_rules.is_some()
    }

    fn oriented_rules(&self) -> Vec<(Word, Word)> {
        self.relations
            .iter()
            .map(|(l, r)| {
                if deglex_less(l, r) {
                    (r.clone(), l.clone())
                } else {
                    (l.clone(), r.clone())
                }
            })
            .collect()
    }

    fn reduce(rules: &[(Word, Word)], w: &Word) -> Word {
        let mut cur = w.clone();
        'outer: loop {
            for (l, r) in rules {
                if fits(l, &cur) {
                    cur = replace(&cur, l, r);
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Try to certify the oriented rules confluent by joining all critical
    /// pairs. On success equality becomes a normal form comparison.
    pub fn certify_confluence(&mut self) -> bool {
        let rules = self.oriented_rules();
        for (i, (l1, r1)) in rules.iter().enumerate() {
            for (l2, r2) in rules.iter().skip(i) {
                // Superposition at the componentwise max of the left sides.
                let peak: Word = l1.iter().zip(l2).map(|(a, b)| *a.max(b)).collect();
                let left = Self::reduce(&rules, &replace(&peak, l1, r1));
                let right = Self::reduce(&rules, &replace(&peak, l2, r2));
                if left != right {
                    return false;
                }
            }
        }
        self.confluent_rules = Some(rules);
        true
    }

    /// Canonical form; only canonical across equal words when a confluence
    /// certificate is present.
    pub fn normal_form(&self, w: &Word) -> Word {
        match &self.confluent_rules {
            Some(rules) => Self::reduce(rules, w),
            None => Self::reduce(&self.oriented_rules(), w),
        }
    }

    /// Decide equality of two words.
    ///
    /// With a confluence certificate this is exact. Otherwise a bounded
    /// bidirectional rewrite search runs; a completed search proves
    /// inequality, while a truncated one is a budget error, never a verdict.
    pub fn words_equal(&self, a: &Word, b: &Word, budget: &Budget) -> Result<bool> {
        if a.len() != self.n_gens || b.len() != self.n_gens {
            return Err(Error::invalid("word length must equal generator count"));
        }
        if a == b {
            return Ok(true);
        }
        if let Some(rules) = &self.confluent_rules {
            return Ok(Self::reduce(rules, a) == Self::reduce(rules, b));
        }
        let reach_a = self.reachable(a, budget)?;
        if reach_a.set.contains(b) {
            return Ok(true);
        }
        let reach_b = self.reachable(b, budget)?;
        if reach_a.set.intersection(&reach_b.set).next().is_some() {
            return Ok(true);
        }
        if reach_a.complete && reach_b.complete {
            Ok(false)
        } else {
            Err(Error::budget(
                "word equality search (inconclusive)",
                (reach_a.set.len() + reach_b.set.len()) as u64,
                budget.max_steps,
            ))
        }
    }

    fn reachable(&self, start: &Word, budget: &Budget) -> Result<Reach> {
        let mut set: BTreeSet<Word> = BTreeSet::new();
        let mut queue: VecDeque<Word> = VecDeque::new();
        let mut complete = true;
        set.insert(start.clone());
        queue.push_back(start.clone());
        let mut steps: u64 = 0;
        while let Some(w) = queue.pop_front() {
            for (l, r) in &self.relations {
                for (from, to) in [(l, r), (r, l)] {
                    if fits(from, &w) {
                        let next = replace(&w, from, to);
                        if word_deg(&next) as usize > budget.word_bound {
                            complete = false;
                            continue;
                        }
                        if set.insert(next.clone()) {
                            steps += 1;
                            if steps > budget.max_steps {
                                return Err(Error::budget(
                                    "word rewriting search",
                                    steps,
                                    budget.max_steps,
                                ));
                            }
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        Ok(Reach { set, complete })
    }
}

struct Reach {
    set: BTreeSet<Word>,
    complete: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two_words() {
        let mut m = FpMonoid::cyclic(2).unwrap();
        assert!(m.certify_confluence());
        let b = Budget::default();
        assert!(m.words_equal(&vec![2], &vec![0], &b).unwrap());
        assert!(m.words_equal(&vec![3], &vec![1], &b).unwrap());
        assert!(!m.words_equal(&vec![1], &vec![0], &b).unwrap());
    }

    #[test]
    fn integers_presentation() {
        let mut m = FpMonoid::integers();
        assert!(m.certify_confluence());
        let b = Budget::default();
        // a^2 b = a.
        assert!(m.words_equal(&vec![2, 1], &vec![1, 0], &b).unwrap());
        assert!(!m.words_equal(&vec![1, 0], &vec![0, 1], &b).unwrap());
    }

    #[test]
    fn bounded_search_without_certificate() {
        let m = FpMonoid::new(2, vec![(vec![2, 0], vec![0, 1]), (vec![0, 2], vec![1, 0])]).unwrap();
        let b = Budget::default();
        // a^2 = b and b^2 = a, so a^4 = b^2 = a.
        assert!(m.words_equal(&vec![4, 0], &vec![1, 0], &b).unwrap());
    }

    #[test]
    fn trivial_relation_is_dropped() {
        let m = FpMonoid::new(1, vec![(vec![1], vec![1])]).unwrap();
        assert!(m.relations.is_empty());
    }
}
