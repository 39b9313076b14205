//! The good-paths adversary for realizable instances.
//!
//! The hidden graph is always the closure of a union of disjoint paths, so
//! it stays realizable, and the target is fixed at `y = 1`: the solution is
//! the indicator of the path heads, since every vertex has exactly one root
//! among its closed ancestors. A path is *good* while every answered query
//! touched it in an even number of vertices; such a path can still be
//! re-attached elsewhere without invalidating any reply. Each query pairs
//! up the good paths it touches oddly, appending one to the other, and
//! retires a leftover odd path. While a good path and any second path
//! remain, two consistent instances with different solutions exist, so a
//! solver answering earlier than that cannot be certain.

use serde::Serialize;

use crate::dig::{self, Branching};
use crate::gf2::{BitMatrix, BitVec};
use crate::uso::MxyOracle;

/// Structural changes recorded for duel transcripts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathEvent {
    Paired {
        at_query: usize,
        front: Vec<usize>,
        back: Vec<usize>,
    },
    Retired {
        at_query: usize,
        path: Vec<usize>,
    },
}

#[derive(Clone, Debug)]
struct Path {
    vertices: Vec<usize>,
    good: bool,
}

impl Path {
    fn odd_overlap(&self, q: &BitVec) -> bool {
        self.vertices.iter().filter(|&&v| q.get(v)).count() % 2 == 1
    }
}

#[derive(Clone, Debug)]
pub struct GoodPathsAdversary {
    n: usize,
    y: BitVec,
    matrix: BitMatrix,
    paths: Vec<Path>,
    transcript: Vec<(BitVec, BitVec)>,
    events: Vec<PathEvent>,
    good_history: Vec<(usize, usize)>,
}

impl GoodPathsAdversary {
    #[must_use]
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        Self {
            n,
            y: BitVec::ones(n),
            matrix: BitMatrix::identity(n),
            paths: (1..=n)
                .map(|v| Path {
                    vertices: vec![v],
                    good: true,
                })
                .collect(),
            transcript: Vec::new(),
            events: Vec::new(),
            good_history: Vec::new(),
        }
    }

    #[must_use]
    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    #[must_use]
    pub fn good_count(&self) -> usize {
        self.paths.iter().filter(|p| p.good).count()
    }

    #[must_use]
    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    #[must_use]
    pub fn events(&self) -> &[PathEvent] {
        &self.events
    }

    /// (good before, good after) per answered query.
    #[must_use]
    pub fn good_history(&self) -> &[(usize, usize)] {
        &self.good_history
    }

    /// Indicator of the current path heads, which solves `Mx = 1`.
    #[must_use]
    pub fn solution(&self) -> BitVec {
        let mut roots = BitVec::zeros(self.n);
        for p in &self.paths {
            roots.set(p.vertices[0], true);
        }
        roots
    }

    fn parents(&self) -> Vec<usize> {
        let mut parents = vec![0usize; self.n];
        for p in &self.paths {
            for pair in p.vertices.windows(2) {
                parents[pair[1] - 1] = pair[0];
            }
        }
        parents
    }

    fn closure_of_paths(&self) -> BitMatrix {
        Branching::from_parents(self.parents())
            .expect("disjoint paths form a branching")
            .closure()
            .into_adj()
    }

    fn respond(&mut self, q: &BitVec) -> BitVec {
        let before_good = self.good_count();
        let mut odd: Vec<usize> = (0..self.paths.len())
            .filter(|&i| self.paths[i].good && self.paths[i].odd_overlap(q))
            .collect();
        odd.sort_by_key(|&i| self.paths[i].vertices.iter().min().copied());
        let at_query = self.transcript.len() + 1;
        for pair in odd.chunks(2) {
            if let [front_idx, back_idx] = *pair {
                let back = std::mem::take(&mut self.paths[back_idx].vertices);
                let front = self.paths[front_idx].vertices.clone();
                // Attaching gives every back vertex all front vertices as
                // new closed ancestors.
                for &w in &back {
                    for &u in &front {
                        self.matrix.set(w, u, true);
                    }
                }
                self.paths[front_idx].vertices.extend(back.iter().copied());
                self.events.push(PathEvent::Paired {
                    at_query,
                    front,
                    back,
                });
            } else {
                let leftover = pair[0];
                self.paths[leftover].good = false;
                self.events.push(PathEvent::Retired {
                    at_query,
                    path: self.paths[leftover].vertices.clone(),
                });
            }
        }
        self.paths.retain(|p| !p.vertices.is_empty());
        self.good_history.push((before_good, self.good_count()));
        self.matrix.mul_vec(q)
    }

    /// Re-derives the invariants from the recorded state: the transcript
    /// replays against the current matrix, good paths intersect every past
    /// query evenly, each query kept at least half of the good paths, and
    /// the matrix is exactly the (realizable) closure of the path system.
    #[must_use]
    pub fn audit(&self) -> bool {
        let replay = self
            .transcript
            .iter()
            .all(|(q, r)| &self.matrix.mul_vec(q) == r);
        let good_even = self
            .paths
            .iter()
            .filter(|p| p.good)
            .all(|p| self.transcript.iter().all(|(q, _)| !p.odd_overlap(q)));
        let halving = self
            .good_history
            .iter()
            .all(|&(before, after)| after >= before / 2);
        let structure = self.closure_of_paths() == self.matrix
            && dig::is_realizable_dig(&self.matrix).unwrap_or(false);
        replay && good_even && halving && structure
    }

    /// While at least one good path and one other path remain, returns a
    /// second instance (matrix and its solution) that agrees with every
    /// reply given so far but has a different solution.
    #[must_use]
    pub fn indistinguishable_alternative(&self) -> Option<(BitMatrix, BitVec)> {
        let good_idx = self.paths.iter().position(|p| p.good)?;
        let other_idx = (0..self.paths.len()).find(|&i| i != good_idx)?;
        let mut parents = self.parents();
        let tail = *self.paths[good_idx].vertices.last().expect("non-empty");
        let other_head = self.paths[other_idx].vertices[0];
        parents[other_head - 1] = tail;
        let branching = Branching::from_parents(parents).expect("still a branching");
        let matrix = branching.closure().into_adj();
        let mut roots = self.solution();
        roots.set(other_head, false);
        Some((matrix, roots))
    }
}

impl MxyOracle for GoodPathsAdversary {
    fn n(&self) -> usize {
        self.n
    }

    fn target(&self) -> &BitVec {
        &self.y
    }

    fn query(&mut self, q: &BitVec) -> BitVec {
        let reply = self.respond(q);
        self.transcript.push((q.clone(), reply.clone()));
        reply
    }

    fn query_count(&self) -> usize {
        self.transcript.len()
    }

    fn transcript(&self) -> &[(BitVec, BitVec)] {
        &self.transcript
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    #[test]
    fn first_pairing_matches_the_construction() {
        let mut adv = GoodPathsAdversary::new(4);
        let reply = adv.query(&bv("1100"));
        // Paths {1} and {2} are odd and get joined into 1 -> 2.
        let expected = Branching::from_parents(vec![0, 1, 0, 0])
            .unwrap()
            .closure()
            .into_adj();
        assert_eq!(adv.matrix(), &expected);
        assert_eq!(reply, expected.mul_vec(&bv("1100")));
        assert_eq!(adv.path_count(), 3);
        assert!(adv.audit());
    }

    #[test]
    fn even_query_changes_nothing() {
        let mut adv = GoodPathsAdversary::new(4);
        let _ = adv.query(&bv("1100"));
        let m = adv.matrix().clone();
        let reply = adv.query(&bv("1100"));
        assert_eq!(adv.matrix(), &m);
        assert_eq!(reply, m.mul_vec(&bv("1100")));
        assert!(adv.audit());
    }

    #[test]
    fn single_odd_path_is_retired() {
        let mut adv = GoodPathsAdversary::new(2);
        let reply = adv.query(&bv("10"));
        assert_eq!(reply, bv("10"));
        assert_eq!(adv.matrix(), &BitMatrix::identity(2));
        assert_eq!(adv.good_count(), 1);
        assert!(matches!(adv.events()[0], PathEvent::Retired { .. }));
        assert!(adv.audit());
    }

    #[test]
    fn audit_detects_corrupted_replies() {
        let mut adv = GoodPathsAdversary::new(4);
        let _ = adv.query(&bv("1010"));
        assert!(adv.audit());
        adv.transcript[0].1.flip(1);
        assert!(!adv.audit());
    }

    #[test]
    fn alternative_instance_is_consistent_and_different() {
        let mut adv = GoodPathsAdversary::new(8);
        for q in ["11001100", "10101010", "11110000"] {
            let _ = adv.query(&bv(q));
            assert!(adv.audit());
            if let Some((alt, alt_solution)) = adv.indistinguishable_alternative() {
                assert!(dig::is_realizable_dig(&alt).unwrap());
                for (past_q, past_r) in adv.transcript() {
                    assert_eq!(&alt.mul_vec(past_q), past_r);
                }
                assert_eq!(alt.mul_vec(&alt_solution), *adv.target());
                assert_ne!(alt_solution, adv.solution());
            }
        }
    }

    #[test]
    fn solution_solves_the_current_system() {
        let mut adv = GoodPathsAdversary::new(6);
        for q in ["111111", "101010", "110110"] {
            let _ = adv.query(&bv(q));
            let roots = adv.solution();
            assert_eq!(adv.matrix().mul_vec(&roots), *adv.target());
        }
    }
}
