//! Minimal primes of `L_G` from `M(G)`, the containment criterion between
//! the `Q_S(G)`, and the dimension, unmixedness, primeness and radicality
//! verdicts. Everything here is combinatorial except
//! [`verify_decomposition`], which asks the Buchberger oracle.

use serde::Serialize;

use crate::builders::{build_lg, build_qs, PrimeComponent};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::graph::{Graph, GraphJson, VertexSet};
use crate::groebner::{Budget, Ideal};
use crate::ring::Ring;

pub const NO_SQRT_MINUS_ONE: &str = "sqrt(-1) not in K";

/// `Q_S(G) ⊆ Q_W(G)`, decided from the graph. A component of `G \ S` lying
/// entirely inside `W` imposes no condition.
pub fn qs_contains(g: &Graph, s: VertexSet, w: VertexSet) -> bool {
    if !s.is_subset(w) {
        return false;
    }
    let big = g.components(w);
    g.components(s).iter().filter(|h| h.vertices.len() > 1).all(|h| {
        let rest = h.vertices.difference(w);
        rest.is_empty()
            || big.iter().any(|c| rest.is_subset(c.vertices) && c.is_bipartite == h.is_bipartite)
    })
}

/// `{Q_S : S ∈ M(G)}`, ordered by size of `S` and then lexicographically.
pub fn minimal_primes(g: &Graph) -> Vec<PrimeComponent> {
    g.enumerate_m().into_iter().map(|s| PrimeComponent::new(g, s)).collect()
}

/// A verdict that is a theorem only under a field hypothesis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict<T> {
    Theorem { value: T, hypothesis: String },
    HypothesisViolated { hypothesis: String },
}

impl<T: Copy> Verdict<T> {
    fn under(holds: bool, hypothesis: &str, value: T) -> Self {
        if holds {
            Verdict::Theorem { value, hypothesis: hypothesis.to_string() }
        } else {
            Verdict::HypothesisViolated { hypothesis: hypothesis.to_string() }
        }
    }

    pub fn value(&self) -> Option<T> {
        match self {
            Verdict::Theorem { value, .. } => Some(*value),
            Verdict::HypothesisViolated { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadicalVerdict {
    pub value: bool,
    pub hypothesis: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub graph: GraphJson,
    pub field: String,
    pub n: usize,
    pub b: usize,
    /// Whether `√-1 ∉ K`, the hypothesis behind the prime-side verdicts.
    pub hypothesis_holds: bool,
    pub minimal_primes: Vec<PrimeComponent>,
    pub dim: Verdict<usize>,
    pub unmixed: Verdict<bool>,
    pub prime: Verdict<bool>,
    pub radical: RadicalVerdict,
}

impl DecompositionReport {
    pub fn m_sets(&self) -> Vec<VertexSet> {
        self.minimal_primes.iter().map(|p| p.s).collect()
    }
}

pub fn classify(g: &Graph, field: FieldSpec) -> DecompositionReport {
    let n = g.n();
    let b = g.component_counts(VertexSet::EMPTY).1;
    let primes = minimal_primes(g);
    let holds = !field.has_sqrt_minus_one();
    let dim = primes.iter().map(|p| n - p.s.len() + p.bipartite_count()).max().unwrap();
    let unmixed = primes.iter().filter(|p| !p.s.is_empty()).all(|p| p.bipartite_count() == p.s.len() + b);
    let prime = g.connectivity_class().is_matching_union;
    let radical = if field.characteristic() != 2 {
        RadicalVerdict {
            value: true,
            hypothesis: "char(K) != 2".into(),
            reason: "L_G is radical in characteristic different from 2".into(),
        }
    } else {
        let bip = g.is_bipartite();
        RadicalVerdict {
            value: bip,
            hypothesis: "char(K) = 2".into(),
            reason: if bip {
                "G is bipartite".into()
            } else {
                "G has an odd cycle".into()
            },
        }
    };
    DecompositionReport {
        graph: g.to_json(),
        field: field.to_string(),
        n,
        b,
        hypothesis_holds: holds,
        minimal_primes: primes,
        dim: Verdict::under(holds, NO_SQRT_MINUS_ONE, dim),
        unmixed: Verdict::under(holds, NO_SQRT_MINUS_ONE, unmixed),
        prime: Verdict::under(holds, NO_SQRT_MINUS_ONE, prime),
        radical,
    }
}

/// Intersect `Q_S(G)` over `S ∈ M(G)` with the oracle and compare the
/// result with `L_G` as reduced Gröbner bases.
pub fn verify_decomposition(g: &Graph, ring: &Ring, budget: &Budget) -> Result<bool> {
    if ring.field().has_sqrt_minus_one() {
        return Err(Error::Precondition(format!(
            "the decomposition needs {NO_SQRT_MINUS_ONE}; {} has one",
            ring.field()
        )));
    }
    let mut meet: Option<Ideal> = None;
    for s in g.enumerate_m() {
        let (q, _) = build_qs(g, s, ring)?;
        meet = Some(match meet {
            None => q,
            Some(m) => m.intersect(&q, budget)?,
        });
    }
    let meet = meet.expect("M(G) contains the empty set");
    Ok(meet.groebner(budget)? == build_lg(g, ring)?.groebner(budget)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingContext;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn containment_examples() {
        let c4 = Graph::preset("cycle:4").unwrap();
        assert!(qs_contains(&c4, set(&[1]), set(&[1])));
        assert!(!qs_contains(&c4, set(&[1]), set(&[2, 3])));
        let budget = Budget::default();
        let r = RingContext::new(4, FieldSpec::Rationals);
        let (q0, _) = build_qs(&c4, VertexSet::EMPTY, &r).unwrap();
        let (q1, _) = build_qs(&c4, set(&[1]), &r).unwrap();
        assert_eq!(qs_contains(&c4, VertexSet::EMPTY, set(&[1])), q1.contains_ideal(&q0, &budget).unwrap());
    }

    #[test]
    fn containment_matches_oracle_on_three_vertices() {
        let budget = Budget::default();
        for g in Graph::all_up_to(3) {
            let r = RingContext::new(g.n(), FieldSpec::Rationals);
            let qs: Vec<Ideal> =
                (0..1u64 << g.n()).map(|b| build_qs(&g, VertexSet::from_bits(b), &r).unwrap().0).collect();
            for s in 0..1u64 << g.n() {
                for w in 0..1u64 << g.n() {
                    let oracle = qs[w as usize].contains_ideal(&qs[s as usize], &budget).unwrap();
                    assert_eq!(qs_contains(&g, VertexSet::from_bits(s), VertexSet::from_bits(w)), oracle, "{g} {s} {w}");
                }
            }
        }
    }

    #[test]
    fn minimal_primes_are_incomparable() {
        for g in Graph::all_up_to(5) {
            let m = g.enumerate_m();
            for &s in &m {
                for &w in &m {
                    if s != w {
                        assert!(!qs_contains(&g, s, w), "{g}: {s} {w}");
                    }
                }
            }
        }
    }

    #[test]
    fn fig3_primes() {
        let m = classify(&Graph::preset("fig3").unwrap(), FieldSpec::Rationals).m_sets();
        for s in [set(&[4]), set(&[4, 5]), set(&[2, 6])] {
            assert!(m.contains(&s));
        }
        assert!(!m.contains(&set(&[3, 7])));
    }

    #[test]
    fn triangle_primes() {
        let p = minimal_primes(&Graph::preset("cycle:3").unwrap());
        assert_eq!(p.len(), 4);
        assert!(p.iter().all(|q| q.height == 3));
        let two_edges = Graph::from_edges(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(minimal_primes(&two_edges).len(), 1);
    }

    #[test]
    fn dimension_examples() {
        let r = classify(&Graph::preset("butterfly").unwrap(), FieldSpec::Rationals);
        assert_eq!((r.dim.value(), r.n, r.b), (Some(6), 5, 0));
        let r = classify(&Graph::preset("complete_bipartite:2,2").unwrap(), FieldSpec::Rationals);
        assert_eq!((r.dim.value(), r.n, r.b, r.unmixed.value()), (Some(5), 4, 1, Some(false)));
    }

    #[test]
    fn dimension_bounds() {
        for g in Graph::all_up_to(5) {
            let r = classify(&g, FieldSpec::Rationals);
            let dim = r.dim.value().unwrap();
            assert!(dim >= r.n + r.b);
            let min_height = r.minimal_primes.iter().map(|p| p.height).min().unwrap();
            assert_eq!(dim, 2 * r.n - min_height);
            let heights: Vec<usize> = r.minimal_primes.iter().map(|p| p.height).collect();
            assert_eq!(r.unmixed.value().unwrap(), heights.iter().all(|&h| h == heights[0]), "{g}");
        }
    }

    #[test]
    fn unmixed_tables() {
        for n in 3..=7 {
            let r = classify(&Graph::preset(&format!("cycle:{n}")).unwrap(), FieldSpec::Rationals);
            assert_eq!(r.unmixed.value(), Some(n % 2 == 1), "C_{n}");
        }
        for n in 2..=6 {
            let r = classify(&Graph::preset(&format!("complete:{n}")).unwrap(), FieldSpec::Rationals);
            assert_eq!(r.unmixed.value(), Some(n <= 3), "K_{n}");
        }
    }

    #[test]
    fn hypothesis_markers() {
        let g = Graph::preset("cycle:3").unwrap();
        let r = classify(&g, FieldSpec::PrimeField(5));
        assert!(!r.hypothesis_holds);
        assert_eq!(r.dim.value(), None);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["dim"]["status"], "hypothesis_violated");
        assert!(r.radical.value);
        let r = classify(&g, FieldSpec::PrimeField(2));
        assert!(!r.radical.value);
        assert!(classify(&g, FieldSpec::PrimeField(3)).dim.value().is_some());
    }

    #[test]
    fn decomposition_small_graphs() {
        let budget = Budget::default();
        for name in ["complete:2", "path:3", "cycle:3"] {
            let g = Graph::preset(name).unwrap();
            let r = RingContext::new(g.n(), FieldSpec::Rationals);
            assert!(verify_decomposition(&g, &r, &budget).unwrap(), "{name}");
        }
        let g = Graph::preset("cycle:3").unwrap();
        assert!(verify_decomposition(&g, &RingContext::new(3, FieldSpec::PrimeField(3)), &budget).unwrap());
        assert!(verify_decomposition(&g, &RingContext::new(3, FieldSpec::PrimeField(5)), &budget).is_err());
    }
}
