//! Height and minimal primes of monomial ideals.
//!
//! The minimal primes of a monomial ideal are generated by the minimal
//! variable sets meeting the support of every generator (minimal
//! transversals of the support hypergraph); the height is the smallest such
//! set.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialIdealStats {
    pub height: usize,
    pub is_squarefree: bool,
    /// Each minimal prime as a sorted list of variable indices.
    pub minimal_primes: Vec<Vec<usize>>,
}

pub fn monomial_ideal_stats(gens: &[Monomial]) -> Result<MonomialIdealStats> {
    if gens.is_empty() {
        return Err(Error::InvalidInput("monomial ideal needs at least one generator".into()));
    }
    if gens.iter().any(|m| m.is_one()) {
        return Err(Error::InvalidInput("unit ideal has no minimal primes".into()));
    }
    if gens[0].nvars() > 64 {
        return Err(Error::InvalidInput("at most 64 variables supported".into()));
    }
    let mut edges: Vec<u64> =
        gens.iter().map(|m| m.support().fold(0u64, |acc, v| acc | (1 << v))).collect();
    edges.sort_unstable();
    edges.dedup();
    // drop edges containing another edge; they are hit automatically
    let edges: Vec<u64> = edges
        .iter()
        .copied()
        .filter(|&e| !edges.iter().any(|&f| f != e && f & e == f))
        .collect();

    let mut found = Vec::new();
    transversals(&edges, 0, &mut found);
    found.sort_unstable_by_key(|s: &u64| (s.count_ones(), *s));
    found.dedup();
    let mut minimal: Vec<u64> = Vec::new();
    for s in found {
        if !minimal.iter().any(|&m| m & s == m) {
            minimal.push(s);
        }
    }
    let height = minimal.iter().map(|s| s.count_ones() as usize).min().unwrap();
    let minimal_primes =
        minimal.iter().map(|&s| (0..64).filter(|v| s >> v & 1 == 1).collect()).collect();
    Ok(MonomialIdealStats {
        height,
        is_squarefree: gens.iter().all(|m| m.is_squarefree()),
        minimal_primes,
    })
}

/// Branch on the variables of the first edge not yet hit.
fn transversals(edges: &[u64], chosen: u64, out: &mut Vec<u64>) {
    match edges.iter().find(|&&e| e & chosen == 0) {
        None => out.push(chosen),
        Some(&e) => {
            let mut rest = e;
            while rest != 0 {
                let v = rest.trailing_zeros();
                rest &= rest - 1;
                transversals(edges, chosen | (1 << v), out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_force(gens: &[Monomial]) -> (usize, Vec<Vec<usize>>) {
        let nv = gens[0].nvars();
        let supports: Vec<u32> =
            gens.iter().map(|m| m.support().fold(0u32, |a, v| a | (1 << v))).collect();
        let covers: Vec<u32> =
            (0u32..1 << nv).filter(|s| supports.iter().all(|e| e & s != 0)).collect();
        let mut minimal: Vec<u32> = covers
            .iter()
            .copied()
            .filter(|&s| !covers.iter().any(|&t| t != s && t & s == t))
            .collect();
        minimal.sort_unstable_by_key(|s| (s.count_ones(), *s));
        let height = minimal.iter().map(|s| s.count_ones() as usize).min().unwrap();
        (height, minimal.iter().map(|&s| (0..nv).filter(|v| s >> v & 1 == 1).collect()).collect())
    }

    fn mono(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn initial_ideal_of_ikn3() {
        // x1 x2 x3 y1 y2 y3: (x_i x_j, i <= j) + (x_i y_j, i < j)
        let mut gens = Vec::new();
        for i in 0..3 {
            for j in i..3 {
                let mut e = [0u16; 6];
                e[i] += 1;
                e[j] += 1;
                gens.push(mono(&e));
            }
            for j in i + 1..3 {
                let mut e = [0u16; 6];
                e[i] = 1;
                e[3 + j] = 1;
                gens.push(mono(&e));
            }
        }
        let st = monomial_ideal_stats(&gens).unwrap();
        assert_eq!(st.height, 3);
        assert!(!st.is_squarefree);
        assert_eq!(st.minimal_primes[0], vec![0, 1, 2]);
        assert!(st.minimal_primes[1..].iter().all(|p| p.len() > 3));
    }

    #[test]
    fn single_square() {
        let st = monomial_ideal_stats(&[mono(&[2, 0])]).unwrap();
        assert_eq!(st.height, 1);
        assert!(!st.is_squarefree);
        assert_eq!(st.minimal_primes, vec![vec![0]]);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(monomial_ideal_stats(&[]).is_err());
        assert!(monomial_ideal_stats(&[mono(&[0, 0])]).is_err());
    }

    proptest! {
        #[test]
        fn agrees_with_subset_enumeration(
            nv in 2usize..=12,
            raw in prop::collection::vec(prop::collection::vec(0u16..3, 12), 1..8)
        ) {
            let gens: Vec<Monomial> = raw
                .iter()
                .map(|e| mono(&e[..nv]))
                .filter(|m| !m.is_one())
                .collect();
            prop_assume!(!gens.is_empty());
            let st = monomial_ideal_stats(&gens).unwrap();
            let (h, mp) = brute_force(&gens);
            prop_assert_eq!(st.height, h);
            prop_assert_eq!(st.minimal_primes, mp);
        }
    }
}
