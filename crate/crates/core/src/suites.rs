//! Batch verification sweeps: each suite runs one family of checks over a
//! range of graphs and reports one line per check family.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::builders::{build_ikmn, build_ikn, build_lg, build_qs};
use crate::decomp::{classify, qs_contains, verify_decomposition};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::gbasis::{char2_nonradical_witness, gb_certify};
use crate::graph::{Graph, VertexSet};
use crate::groebner::{default_order, is_groebner_basis, monomial_ideal_stats, Budget, Ideal};
use crate::poly::Polynomial;
use crate::ring::RingContext;
use crate::variety::{check_vanishing, orthogonal_lines_hold, sample_vs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Gb,
    Decomp,
    Ikn,
    Char2,
    Variety,
    All,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Ikn, Suite::Gb, Suite::Decomp, Suite::Char2, Suite::Variety];

    fn default_n_max(self) -> usize {
        match self {
            Suite::Ikn | Suite::Variety => 5,
            Suite::Gb | Suite::Decomp | Suite::Char2 | Suite::All => 4,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "gb" => Suite::Gb,
            "decomp" => Suite::Decomp,
            "ikn" => Suite::Ikn,
            "char2" => Suite::Char2,
            "variety" => Suite::Variety,
            "all" => Suite::All,
            _ => return Err(Error::InvalidInput(format!("unknown suite `{s}`"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).unwrap();
        f.write_str(s.as_str().unwrap())
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub n_max: Option<usize>,
    pub seeds: u64,
    pub jobs: usize,
    pub budget: Budget,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { n_max: None, seeds: 20, jobs: 0, budget: Budget::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {} ({} checked)", self.suite, self.name, self.checked)?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

/// Run a suite (or all of them) on a dedicated thread pool.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    pool.install(|| {
        if suite == Suite::All {
            let mut out = Vec::new();
            for s in Suite::ALL {
                out.extend(run_one(s, cfg)?);
            }
            Ok(out)
        } else {
            run_one(suite, cfg)
        }
    })
}

fn run_one(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let n_max = cfg.n_max.unwrap_or(suite.default_n_max());
    match suite {
        Suite::Ikn => ikn_suite(suite, n_max, &cfg.budget),
        Suite::Gb => gb_suite(suite, n_max, &cfg.budget),
        Suite::Decomp => decomp_suite(suite, n_max, &cfg.budget),
        Suite::Char2 => char2_suite(suite, &cfg.budget),
        Suite::Variety => Ok(variety_suite(suite, n_max, cfg.seeds)),
        Suite::All => unreachable!(),
    }
}

/// Evaluate `f` on every item in parallel; collect failures in input order.
fn sweep<T: Sync, F>(items: &[T], f: F) -> Result<(usize, Vec<String>)>
where
    F: Fn(&T) -> Result<Option<String>> + Sync,
{
    let results: Vec<Result<Option<String>>> = items.par_iter().map(&f).collect();
    let mut failures = Vec::new();
    for r in results {
        if let Some(msg) = r? {
            failures.push(msg);
        }
    }
    Ok((items.len(), failures))
}

fn result(suite: Suite, name: impl Into<String>, (checked, failures): (usize, Vec<String>)) -> CheckResult {
    let detail = match failures.len() {
        0 => String::new(),
        k => format!("{k} failed, first: {}", failures[0]),
    };
    CheckResult { suite, name: name.into(), passed: failures.is_empty(), checked, detail }
}

fn ikn_suite(suite: Suite, n_max: usize, budget: &Budget) -> Result<Vec<CheckResult>> {
    let q = FieldSpec::Rationals;
    let mut cases: Vec<(usize, usize)> = Vec::new();
    for n in 2..=n_max {
        cases.push((0, n));
        cases.extend((1..n).map(|m| (m, n)));
    }
    let build = |&(m, n): &(usize, usize)| -> Result<(Ideal, String)> {
        let r = RingContext::new(n, q);
        Ok(if m == 0 {
            (build_ikn(n, &r)?, format!("K_{n}"))
        } else {
            (build_ikmn(m, n, &r)?, format!("K_{{{m},{}}}", n - m))
        })
    };
    let gb = sweep(&cases, |c| {
        let (i, name) = build(c)?;
        Ok((!is_groebner_basis(i.gens(), &default_order(i.ring()))).then_some(name))
    })?;
    let tall: Vec<(usize, usize)> = cases.iter().copied().filter(|&(_, n)| n >= 3).collect();
    let heights = sweep(&tall, |c| {
        let (i, name) = build(c)?;
        let lms: Vec<_> = i.groebner(budget)?.leading_monomials();
        let h = monomial_ideal_stats(&lms)?.height;
        let want = if c.0 == 0 { c.1 } else { c.1 - 1 };
        Ok((h != want).then(|| format!("{name}: height {h}, expected {want}")))
    })?;
    let small: Vec<(usize, usize)> = cases.iter().copied().filter(|&(_, n)| n <= 4).collect();
    let nzd = sweep(&small, |c| {
        let (i, name) = build(c)?;
        for v in 0..i.ring().num_vars() {
            let q = i.quotient_by(&Polynomial::var(i.ring(), v), budget)?;
            if !q.equals(&i, budget)? {
                return Ok(Some(format!("{name}: {} is a zero divisor", i.ring().var_name(v))));
            }
        }
        Ok(None)
    })?;
    let trichotomy = sweep(&[3usize, 4], |&n| {
        let f5 = RingContext::new(n, FieldSpec::PrimeField(5));
        let lin = |s: i64| {
            let gens = (1..=n)
                .map(|i| Polynomial::parse(&f5, &format!("x{i} + {s}*y{i}")))
                .collect::<Result<Vec<_>>>()?;
            Ideal::new(&f5, gens)
        };
        if !lin(2)?.intersect(&lin(-2)?, budget)?.equals(&build_ikn(n, &f5)?, budget)? {
            return Ok(Some(format!("K_{n}: F_5 splitting")));
        }
        let f2 = RingContext::new(n, FieldSpec::PrimeField(2));
        let ik = build_ikn(n, &f2)?;
        for i in 1..=n {
            let w = Polynomial::parse(&f2, &format!("x{i} + y{i}"))?;
            if !ik.radical_member(&w, budget)? {
                return Ok(Some(format!("K_{n}: x{i}+y{i} not in the radical over F_2")));
            }
        }
        Ok(None)
    })?;
    Ok(vec![
        result(suite, format!("standard generators are a Groebner basis, n <= {n_max}"), gb),
        result(suite, format!("initial ideal heights n and n-1, 3 <= n <= {n_max}"), heights),
        result(suite, "variables are non-zero-divisors, n <= 4", nzd),
        result(suite, "I_{K_n} splits over F_5 and has radical (x_i+y_i) over F_2", trichotomy),
    ])
}

fn gb_suite(suite: Suite, n_max: usize, budget: &Budget) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut graphs: Vec<Graph> = Graph::all_up_to(n_max).collect();
    for name in ["cycle:5", "path:5", "complete:4", "complement:butterfly"] {
        graphs.push(Graph::preset(name)?);
    }
    for field in [FieldSpec::Rationals, FieldSpec::PrimeField(3)] {
        let res = sweep(&graphs, |g| {
            let r = RingContext::new(g.n(), field);
            let c = gb_certify(g, &r, budget)?;
            Ok((!c.all()).then(|| format!("{g}: {c:?}")))
        })?;
        out.push(result(suite, format!("combinatorial basis certifies over {field}"), res));
    }
    Ok(out)
}

fn decomp_suite(suite: Suite, n_max: usize, budget: &Budget) -> Result<Vec<CheckResult>> {
    let graphs: Vec<Graph> = Graph::all_up_to(n_max).collect();
    let q = FieldSpec::Rationals;
    let contain = sweep(&graphs, |g| {
        let r = RingContext::new(g.n(), q);
        let all: Vec<VertexSet> = (0..1u64 << g.n()).map(VertexSet::from_bits).collect();
        let qs: Vec<Ideal> = all.iter().map(|&s| Ok(build_qs(g, s, &r)?.0)).collect::<Result<_>>()?;
        for (a, &s) in all.iter().enumerate() {
            for (b, &w) in all.iter().enumerate() {
                if qs_contains(g, s, w) != qs[b].contains_ideal(&qs[a], budget)? {
                    return Ok(Some(format!("{g}: S={s}, W={w}")));
                }
            }
        }
        Ok(None)
    })?;
    let decomposition = sweep(&graphs, |g| {
        let r = RingContext::new(g.n(), q);
        Ok((!verify_decomposition(g, &r, budget)?).then(|| g.to_string()))
    })?;
    let small: Vec<Graph> = Graph::all_up_to(n_max.max(5)).collect();
    let prime = sweep(&small, |g| {
        let m_trivial = g.enumerate_m() == vec![VertexSet::EMPTY];
        let cc = g.connectivity_class();
        let ok = m_trivial == cc.is_matching_union && m_trivial == cc.complement_is_n_minus_2_connected;
        Ok((!ok).then(|| g.to_string()))
    })?;
    let dims = sweep(&small, |g| {
        let rep = classify(g, q);
        Ok((rep.dim.value().unwrap() < rep.n + rep.b).then(|| g.to_string()))
    })?;
    let mut table = Vec::new();
    for n in 3..=7 {
        let unmixed = classify(&Graph::preset(&format!("cycle:{n}"))?, q).unmixed.value().unwrap();
        if unmixed != (n % 2 == 1) {
            table.push(format!("C_{n}"));
        }
    }
    for n in 2..=6 {
        let unmixed = classify(&Graph::preset(&format!("complete:{n}"))?, q).unmixed.value().unwrap();
        if unmixed != (n <= 3) {
            table.push(format!("K_{n}"));
        }
    }
    Ok(vec![
        result(suite, format!("containment criterion matches the oracle, n <= {n_max}"), contain),
        result(suite, format!("L_G is the intersection of its minimal primes, n <= {n_max}"), decomposition),
        result(suite, "primeness predicates agree", prime),
        result(suite, "dim >= n + b", dims),
        result(suite, "unmixedness of C_3..C_7 and K_2..K_6", (10, table)),
    ])
}

fn char2_suite(suite: Suite, budget: &Budget) -> Result<Vec<CheckResult>> {
    let f2 = FieldSpec::PrimeField(2);
    let found = sweep(&["cycle:3", "cycle:5"], |name| {
        let g = Graph::preset(name)?;
        let r = RingContext::new(g.n(), f2);
        Ok(char2_nonradical_witness(&g, &r, None, budget)?.is_none().then(|| format!("{name}: no witness")))
    })?;
    let c4 = Graph::preset("cycle:4")?;
    let rejected = char2_nonradical_witness(&c4, &RingContext::new(4, f2), None, budget).is_err();
    let radical = {
        let r = RingContext::new(4, f2);
        let lg = build_lg(&c4, &r)?;
        let w = Polynomial::parse(&r, "x1 + y1")?;
        // for bipartite G, (x_1 + y_1)^2 ∈ L_G would force x_1 + y_1 ∈ L_G
        lg.contains_poly(&w.mul(&w), budget)? == lg.contains_poly(&w, budget)?
    };
    Ok(vec![
        result(suite, "odd cycles C_3, C_5 have non-radical witnesses over F_2", found),
        result(suite, "C_4 rejected by precondition", (1, if rejected { vec![] } else { vec!["accepted".into()] })),
        result(suite, "C_4: (x1+y1)^2 in L_G iff x1+y1 in L_G", (1, if radical { vec![] } else { vec!["witness".into()] })),
    ])
}

fn variety_suite(suite: Suite, n_max: usize, seeds: u64) -> Vec<CheckResult> {
    let graphs: Vec<Graph> = Graph::all_up_to(n_max).collect();
    let res = sweep(&graphs, |g| {
        for bits in 0..1u64 << g.n() {
            for seed in 0..seeds {
                let s = sample_vs(g, VertexSet::from_bits(bits), seed);
                if !check_vanishing(&s, g) || !orthogonal_lines_hold(&s) {
                    return Ok(Some(format!("{g}: S={}, seed {seed}", VertexSet::from_bits(bits))));
                }
            }
        }
        Ok(None)
    })
    .expect("sampling is infallible");
    vec![result(suite, format!("samples of every V_S vanish on L_G, n <= {n_max}, {seeds} seeds"), res)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_suites() {
        assert_eq!("char2".parse::<Suite>().unwrap(), Suite::Char2);
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!(Suite::Variety.to_string(), "variety");
    }

    #[test]
    fn small_runs_pass() {
        let cfg = SuiteConfig { n_max: Some(3), seeds: 3, jobs: 2, budget: Budget::default() };
        for suite in [Suite::Ikn, Suite::Gb, Suite::Char2, Suite::Variety] {
            for r in run_suite(suite, &cfg).unwrap() {
                assert!(r.passed, "{r}");
            }
        }
    }

    #[test]
    fn budget_errors_propagate() {
        let cfg = SuiteConfig { n_max: Some(3), seeds: 1, jobs: 1, budget: Budget { max_basis: 1, max_pairs: 10 } };
        assert!(matches!(run_suite(Suite::Gb, &cfg), Err(Error::BudgetExhausted(_))));
    }
}
