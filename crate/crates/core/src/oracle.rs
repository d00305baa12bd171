//! Brute-force coset census.
//!
//! Every vector of GF(q)^n is visited once. Its syndrome `H v^T` names the
//! coset it lies in, and the coset's bucket counts the vector under its
//! Hamming weight. A bucket's smallest nonzero weight is the coset weight.
//! Buckets are then grouped by coset weight. Nothing here relies on decoding
//! or on the closed forms; it is the ground truth they are checked against.
//!
//! The space is split by the values of its last few coordinates into chunks
//! that workers claim from a shared counter. Each worker fills a private
//! bucket table; tables are merged by addition, so the result does not depend
//! on the worker count or on scheduling.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use num_bigint::BigUint;
use num_traits::pow;

use crate::code::{CodeParams, MdsCode, Spectrum};
use crate::error::{Error, Result};
use crate::field::FieldElement;

/// Largest `q^n` the census will enumerate.
pub const VECTOR_BUDGET: u64 = 200_000_000;
/// Largest `q^(n-k) * (n+1)` bucket table (64-bit counters).
pub const COUNTER_BUDGET: u64 = 1 << 25;

/// All cosets of one weight `W`, aggregated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetClass {
    pub coset_count: u64,
    /// Weight-w vectors summed over these cosets.
    pub spectrum: Spectrum,
    /// Fewest and most weight-W vectors (leaders) found in a single coset.
    pub leaders: (u64, u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetCensus {
    pub params: CodeParams,
    pub covering_radius: usize,
    pub per_weight: BTreeMap<usize, CosetClass>,
}

impl CosetCensus {
    /// Cumulative spectrum over cosets of weight `<= max_weight`.
    pub fn cumulative(&self, max_weight: usize) -> Spectrum {
        let mut total = vec![BigUint::default(); self.params.n() + 1];
        for class in self.per_weight.range(..=max_weight).map(|(_, c)| c) {
            for (acc, c) in total.iter_mut().zip(class.spectrum.counts()) {
                *acc += c;
            }
        }
        Spectrum::from(total)
    }

    /// Spectrum of weight-W cosets, all zeros if there are none.
    pub fn spectrum(&self, coset_weight: usize) -> Spectrum {
        self.per_weight
            .get(&coset_weight)
            .map(|c| c.spectrum.clone())
            .unwrap_or_else(|| Spectrum::zeros(self.params.n()))
    }

    pub fn coset_count(&self, coset_weight: usize) -> u64 {
        self.per_weight
            .get(&coset_weight)
            .map_or(0, |c| c.coset_count)
    }

    /// Checks the partition and leader invariants; returns every violation.
    pub fn violations(&self) -> Vec<String> {
        let p = self.params;
        let q = BigUint::from(p.q());
        let code_size: BigUint = pow(q.clone(), p.k());
        let mut out = Vec::new();

        let cosets: u64 = self.per_weight.values().map(|c| c.coset_count).sum();
        if BigUint::from(cosets) != pow(q.clone(), p.n() - p.k()) {
            out.push(format!("coset counts sum to {cosets}, expected q^(n-k)"));
        }
        let vectors: BigUint = self.per_weight.values().map(|c| c.spectrum.total()).sum();
        if vectors != pow(q, p.n()) {
            out.push(format!("spectra hold {vectors} vectors, expected q^n"));
        }
        for (&w, class) in &self.per_weight {
            if class.spectrum.total() != &code_size * class.coset_count {
                out.push(format!(
                    "W = {w}: spectrum mass {} != {} cosets * q^k",
                    class.spectrum.total(),
                    class.coset_count
                ));
            }
            if let Some(v) = (0..w).find(|&v| class.spectrum.get(v) != &BigUint::default()) {
                out.push(format!(
                    "W = {w}: weight-{v} vectors below the coset weight"
                ));
            }
            if w <= p.t() && class.leaders != (1, 1) {
                out.push(format!(
                    "W = {w} <= t: leader counts {:?} per coset, expected exactly 1",
                    class.leaders
                ));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CensusOptions {
    pub workers: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            workers: thread::available_parallelism().map_or(1, usize::from),
        }
    }
}

/// Checks the enumeration budget without doing any work.
pub fn check_budget(params: CodeParams) -> Result<()> {
    let q = params.q() as u64;
    let vectors = q.checked_pow(params.n() as u32);
    if vectors.is_none_or(|v| v > VECTOR_BUDGET) {
        return Err(Error::BudgetExceeded(format!(
            "q^n = {}^{} exceeds {VECTOR_BUDGET} vectors",
            params.q(),
            params.n()
        )));
    }
    let counters = q.pow((params.n() - params.k()) as u32) * (params.n() as u64 + 1);
    if counters > COUNTER_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "{counters} syndrome bucket counters exceed {COUNTER_BUDGET}"
        )));
    }
    Ok(())
}

pub fn census(code: &MdsCode) -> Result<CosetCensus> {
    census_with(code, CensusOptions::default())
}

pub fn covering_radius(code: &MdsCode) -> Result<usize> {
    Ok(census(code)?.covering_radius)
}

pub fn census_with(code: &MdsCode, options: CensusOptions) -> Result<CosetCensus> {
    let params = code.params();
    check_budget(params)?;
    let enumerator = Enumerator::new(code);
    let table = enumerator.run(options.workers.max(1));

    let width = params.n() + 1;
    let mut per_weight: BTreeMap<usize, CosetClass> = BTreeMap::new();
    for bucket in table.chunks_exact(width) {
        let weight = bucket
            .iter()
            .position(|&c| c != 0)
            .expect("every coset is nonempty");
        let leaders = bucket[weight];
        let class = per_weight.entry(weight).or_insert_with(|| CosetClass {
            coset_count: 0,
            spectrum: Spectrum::zeros(params.n()),
            leaders: (leaders, leaders),
        });
        class.coset_count += 1;
        class.spectrum.add_counts(bucket);
        class.leaders = (class.leaders.0.min(leaders), class.leaders.1.max(leaders));
    }
    let covering_radius = *per_weight.keys().next_back().expect("at least one coset");
    Ok(CosetCensus {
        params,
        covering_radius,
        per_weight,
    })
}

struct Enumerator<'a> {
    code: &'a MdsCode,
    n: usize,
    q: usize,
    r: usize,
    /// step[j][a]: syndrome change when coordinate j moves from element a to a + 1.
    step: Vec<Vec<Vec<FieldElement>>>,
    /// wrap[j]: syndrome change when coordinate j wraps from q - 1 back to 0.
    wrap: Vec<Vec<FieldElement>>,
    /// Leading free coordinates walked by the odometer; the rest are fixed per chunk.
    free: usize,
}

impl<'a> Enumerator<'a> {
    fn new(code: &'a MdsCode) -> Self {
        let p = code.params();
        let (n, q, r) = (p.n(), p.q(), p.n() - p.k());
        let f = code.field();
        let h = code.parity_check();
        let column = |j: usize, a: FieldElement| -> Vec<FieldElement> {
            h.iter().map(|row| f.mul(row[j], a)).collect()
        };
        let el = |i: usize| f.element(i).unwrap();
        let step = (0..n)
            .map(|j| {
                (0..q - 1)
                    .map(|a| column(j, f.sub(el(a + 1), el(a))))
                    .collect()
            })
            .collect();
        let wrap = (0..n).map(|j| column(j, f.neg(el(q - 1)))).collect();
        // Enough chunks for load balancing, few enough to keep the per-chunk
        // setup negligible.
        let mut fixed = 0;
        while fixed < n && q.pow(fixed as u32) < 64 {
            fixed += 1;
        }
        Enumerator {
            code,
            n,
            q,
            r,
            step,
            wrap,
            free: n - fixed,
        }
    }

    fn run(&self, workers: usize) -> Vec<u64> {
        let width = self.n + 1;
        let buckets = self.q.pow(self.r as u32);
        let chunks = self.q.pow((self.n - self.free) as u32);
        let next = AtomicUsize::new(0);
        let tables: Vec<Vec<u64>> = thread::scope(|s| {
            let handles: Vec<_> = (0..workers.min(chunks))
                .map(|_| {
                    s.spawn(|| {
                        let mut table = vec![0u64; buckets * width];
                        loop {
                            let chunk = next.fetch_add(1, Ordering::Relaxed);
                            if chunk >= chunks {
                                break table;
                            }
                            self.walk_chunk(chunk, &mut table);
                        }
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        let mut tables = tables.into_iter();
        let mut total = tables.next().unwrap();
        for t in tables {
            for (a, b) in total.iter_mut().zip(t) {
                *a += b;
            }
        }
        total
    }

    /// Visits every vector whose trailing coordinates spell `chunk` in base q.
    fn walk_chunk(&self, chunk: usize, table: &mut [u64]) {
        let f = self.code.field();
        let (q, r, width) = (self.q, self.r, self.n + 1);

        let mut prefix = vec![FieldElement::ZERO; self.n];
        let mut c = chunk;
        for x in prefix[self.free..].iter_mut() {
            *x = f.element(c % q).unwrap();
            c /= q;
        }
        let start = self.code.syndrome(&prefix);
        let mut syndrome: Vec<usize> = start.iter().map(|s| s.index()).collect();
        let place: Vec<usize> = (0..r).map(|i| q.pow(i as u32)).collect();
        let mut index: usize = syndrome.iter().zip(&place).map(|(s, p)| s * p).sum();
        let mut weight = prefix.iter().filter(|x| !x.is_zero()).count();

        let mut digits = vec![0usize; self.free];
        let apply = |delta: &[FieldElement], syndrome: &mut [usize], index: &mut usize| {
            for i in 0..r {
                let old = syndrome[i];
                let new = f.add(f.element(old).unwrap(), delta[i]).index();
                syndrome[i] = new;
                *index = *index + new * place[i] - old * place[i];
            }
        };
        loop {
            table[index * width + weight] += 1;
            let mut j = 0;
            loop {
                if j == self.free {
                    return;
                }
                let a = digits[j];
                if a + 1 < q {
                    apply(&self.step[j][a], &mut syndrome, &mut index);
                    if a == 0 {
                        weight += 1;
                    }
                    digits[j] = a + 1;
                    break;
                }
                apply(&self.wrap[j], &mut syndrome, &mut index);
                weight -= 1;
                digits[j] = 0;
                j += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn census_of(n: usize, k: usize, q: usize) -> CosetCensus {
        let code = MdsCode::new(CodeParams::new(n, k, q).unwrap()).unwrap();
        census_with(&code, CensusOptions { workers: 2 }).unwrap()
    }

    fn counts(c: &CosetCensus) -> Vec<(usize, u64)> {
        c.per_weight
            .iter()
            .map(|(&w, cl)| (w, cl.coset_count))
            .collect()
    }

    #[test]
    fn binary_repetition_code() {
        let c = census_of(3, 1, 2);
        assert_eq!(counts(&c), vec![(0, 1), (1, 3)]);
        assert_eq!(c.covering_radius, 1);
        assert!(c.violations().is_empty());
    }

    #[test]
    fn full_space_code_has_radius_zero() {
        let c = census_of(4, 4, 5);
        assert_eq!(counts(&c), vec![(0, 1)]);
        assert_eq!(c.covering_radius, 0);
    }

    #[test]
    fn extended_rs_625() {
        let c = census_of(6, 2, 5);
        assert_eq!(counts(&c), vec![(0, 1), (1, 24), (2, 240), (3, 360)]);
        assert_eq!(c.covering_radius, 3);
        let w3: Vec<u64> = c
            .spectrum(3)
            .counts()
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(w3, vec![0, 0, 0, 1040, 2280, 3120, 2560]);
        assert!(c.violations().is_empty(), "{:?}", c.violations());
    }

    #[test]
    fn worker_count_does_not_change_the_result() {
        let code = MdsCode::new(CodeParams::new(5, 3, 4).unwrap()).unwrap();
        let one = census_with(&code, CensusOptions { workers: 1 }).unwrap();
        for workers in [2, 3, 8] {
            assert_eq!(census_with(&code, CensusOptions { workers }).unwrap(), one);
        }
    }

    #[test]
    fn direct_syndromes_agree_with_incremental_walk() {
        // Recompute every syndrome from scratch for a small code.
        let code = MdsCode::new(CodeParams::new(4, 2, 3).unwrap()).unwrap();
        let f = code.field();
        let mut buckets: BTreeMap<Vec<FieldElement>, Vec<u64>> = BTreeMap::new();
        for x in 0..81usize {
            let v: Vec<FieldElement> = (0..4)
                .map(|i| f.element(x / 3usize.pow(i) % 3).unwrap())
                .collect();
            let wt = v.iter().filter(|e| !e.is_zero()).count();
            buckets
                .entry(code.syndrome(&v))
                .or_insert_with(|| vec![0; 5])[wt] += 1;
        }
        let mut direct: BTreeMap<usize, u64> = BTreeMap::new();
        for h in buckets.values() {
            *direct
                .entry(h.iter().position(|&c| c > 0).unwrap())
                .or_default() += 1;
        }
        let c = census_with(&code, CensusOptions { workers: 1 }).unwrap();
        assert_eq!(counts(&c), direct.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn budget_is_enforced_up_front() {
        let p = CodeParams::new(12, 4, 11).unwrap();
        assert!(matches!(check_budget(p), Err(Error::BudgetExceeded(_))));
        let code = MdsCode::new(p).unwrap();
        assert!(matches!(census(&code), Err(Error::BudgetExceeded(_))));
    }
}
