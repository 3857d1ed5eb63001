use std::collections::HashSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::exact::{Prime, Ring};
use crate::poly::{PolyMap, Polynomial};
use crate::weyl::WeylEndo;

use super::{center_map, invert_weyl_endo, verify_center_map, PipelineError};

/// Everything computed for one prime. Fields are `None` where an earlier
/// step failed; `error` then says why.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeRecord {
    pub prime: Prime,
    pub relations_ok: bool,
    pub center_map: Option<PolyMap>,
    pub jacobian: Option<Polynomial>,
    pub jacobian_one: Option<bool>,
    pub bracket_preserved: Option<bool>,
    pub degree_weyl: Option<u32>,
    pub degree_center: Option<u32>,
    pub inverse_center_degree: Option<u32>,
    pub inverse_weyl_degree: Option<u32>,
    pub hypothesis_flags: Vec<String>,
    pub elapsed: Duration,
    pub error: Option<String>,
}

impl PrimeRecord {
    pub fn degree_equal(&self) -> Option<bool> {
        self.center_map.as_ref().map(|_| self.degree_weyl == self.degree_center)
    }

    /// `p ≤ n`: outside the hypothesis of the Jacobian statement.
    pub fn excluded(&self) -> bool {
        self.hypothesis_flags.iter().any(|f| f == FLAG_P_LE_N)
    }

    /// All checks that apply at this prime succeeded.
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.relations_ok
            && self.bracket_preserved == Some(true)
            && self.degree_equal() == Some(true)
            && (self.excluded() || self.jacobian_one == Some(true))
            && self.inverse_center_degree.is_some()
            && self.inverse_weyl_degree.is_some()
    }
}

/// Inversion of `f` over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRecord {
    pub inverse_weyl_degree: Option<u32>,
    pub elapsed: Duration,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub n: usize,
    pub degree: Option<u32>,
    pub primes: Vec<Prime>,
    /// Primes at which a hypothesis (`p > n`) fails; their checks still ran.
    pub excluded_primes: Vec<Prime>,
    /// One record per requested prime, in request order.
    pub records: Vec<PrimeRecord>,
    pub rational: RationalRecord,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(PrimeRecord::passed)
            && self.rational.error.is_none()
            && self.rational.inverse_weyl_degree.is_some()
    }
}

pub(crate) const FLAG_P_LE_N: &str = "p<=n: jacobian outside hypothesis";
const FLAG_CHAR_2: &str = "p=2: characteristic 2";

/// Runs the full per-prime pipeline on `f` for every prime, plus inversion
/// over ℚ. Failures at one prime are recorded in its record and never stop
/// the others.
pub fn run_suite(
    f: &WeylEndo,
    primes: &[Prime],
    max_degree: Option<u32>,
    name: &str,
) -> Result<SuiteReport, PipelineError> {
    if !f.is_verified() {
        f.verify_relations().map_err(PipelineError::Relations)?;
        return Err(PipelineError::Unverified);
    }
    if f.ring() != Ring::Integer {
        return Err(PipelineError::RingMismatch {
            expected: "Z".into(),
            found: f.ring(),
        });
    }
    let mut seen = HashSet::new();
    for p in primes {
        if !seen.insert(p.get()) {
            return Err(PipelineError::DuplicatePrime(p.get()));
        }
    }
    if max_degree == Some(0) {
        return Err(PipelineError::ZeroDegreeBound);
    }
    let n = f.signature().n();

    let (records, rational) = rayon::join(
        || primes.par_iter().map(|&p| prime_record(f, p, max_degree)).collect::<Vec<_>>(),
        || rational_record(f, max_degree),
    );
    let excluded_primes = records.iter().filter(|r| r.excluded()).map(|r| r.prime).collect();
    Ok(SuiteReport {
        name: name.to_string(),
        n,
        degree: f.degree(),
        primes: primes.to_vec(),
        excluded_primes,
        records,
        rational,
    })
}

fn prime_record(f: &WeylEndo, p: Prime, max_degree: Option<u32>) -> PrimeRecord {
    let start = Instant::now();
    let n = f.signature().n();
    let mut flags = Vec::new();
    if p.get() as usize <= n {
        flags.push(FLAG_P_LE_N.to_string());
    }
    if p.get() == 2 {
        flags.push(FLAG_CHAR_2.to_string());
    }
    let mut rec = PrimeRecord {
        prime: p,
        relations_ok: false,
        center_map: None,
        jacobian: None,
        jacobian_one: None,
        bracket_preserved: None,
        degree_weyl: None,
        degree_center: None,
        inverse_center_degree: None,
        inverse_weyl_degree: None,
        hypothesis_flags: flags,
        elapsed: Duration::ZERO,
        error: None,
    };
    if let Err(e) = fill_prime_record(f, p, max_degree, &mut rec) {
        rec.error = Some(e.to_string());
    }
    rec.elapsed = start.elapsed();
    rec
}

fn fill_prime_record(
    f: &WeylEndo,
    p: Prime,
    max_degree: Option<u32>,
    rec: &mut PrimeRecord,
) -> Result<(), PipelineError> {
    let fp = f.reduce_mod_p(p)?;
    rec.relations_ok = fp.verify_relations().is_ok();
    rec.degree_weyl = fp.degree();
    let cm = center_map(&fp, p)?;
    rec.degree_center = cm.map_degree;
    let v = verify_center_map(&cm)?;
    rec.bracket_preserved = Some(v.bracket_preserved);
    rec.jacobian_one = Some(v.jacobian_one);
    rec.jacobian = Some(v.jacobian);
    rec.inverse_center_degree = cm.map.invert(max_degree)?.map(|g| g.degree().unwrap_or(0));
    rec.center_map = Some(cm.map);
    rec.inverse_weyl_degree = invert_weyl_endo(&fp, max_degree)?.and_then(|g| g.degree());
    Ok(())
}

fn rational_record(f: &WeylEndo, max_degree: Option<u32>) -> RationalRecord {
    let start = Instant::now();
    let result = f
        .to_ring(Ring::Rational)
        .map_err(PipelineError::from)
        .and_then(|fq| invert_weyl_endo(&fq, max_degree));
    let (inverse_weyl_degree, error) = match result {
        Ok(g) => (g.and_then(|g| g.degree()), None),
        Err(e) => (None, Some(e.to_string())),
    };
    RationalRecord {
        inverse_weyl_degree,
        elapsed: start.elapsed(),
        error,
    }
}
