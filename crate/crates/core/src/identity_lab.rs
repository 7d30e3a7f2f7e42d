//! Randomized exact checks that the expansion and telescoped formulas for the
//! Milnor class of an intersection agree with the product formula.
//!
//! Each trial draws classes `c^SM_i`, `M_i` with small integer coefficients
//! and sets `c^FJ_i = c^SM_i + (-1)^{n-d_i} M_i`; both sides are then compared
//! in the truncated ring with exact arithmetic.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chow_ring::ChowClass;
use crate::class_engine::{milnor_cor11, milnor_expansion, milnor_thm1};
use crate::error::{Error, Result};

const COEFF_BOUND: i64 = 9;
const MAX_RANK: i64 = 5;

/// One random configuration of classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomInstance {
    pub seed: u64,
    pub trial: u64,
    pub n: usize,
    pub ranks: Vec<i64>,
    pub csm: Vec<ChowClass>,
    pub milnor: Vec<ChowClass>,
    pub cfj: Vec<ChowClass>,
}

impl RandomInstance {
    /// Trial `trial` of the run seeded by `seed`; each trial reads its own
    /// ChaCha stream so trials are independent of one another.
    pub fn generate(n: usize, r: usize, seed: u64, trial: u64) -> Result<Self> {
        check_range(n, r)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let random_class = |rng: &mut ChaCha8Rng| {
            let coeffs: Vec<i64> = (0..=n)
                .map(|_| rng.gen_range(-COEFF_BOUND..=COEFF_BOUND))
                .collect();
            ChowClass::from_ints(n, &coeffs)
        };
        let mut ranks = Vec::with_capacity(r);
        let mut csm = Vec::with_capacity(r);
        let mut milnor = Vec::with_capacity(r);
        let mut cfj = Vec::with_capacity(r);
        for _ in 0..r {
            let d = rng.gen_range(1..=MAX_RANK);
            let s = random_class(&mut rng)?;
            let m = random_class(&mut rng)?;
            let sign = if (n as i64 - d).rem_euclid(2) == 0 { 1 } else { -1 };
            cfj.push(s.checked_add(&m.scale_int(sign))?);
            ranks.push(d);
            csm.push(s);
            milnor.push(m);
        }
        Ok(RandomInstance {
            seed,
            trial,
            n,
            ranks,
            csm,
            milnor,
            cfj,
        })
    }

    fn thm1(&self) -> Result<ChowClass> {
        let dim_x = self.n as i64 - self.ranks.iter().sum::<i64>();
        milnor_thm1(&self.cfj, &self.csm, self.n, dim_x)
    }
}

fn check_range(n: usize, r: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::AmbientTooSmall { min: 1, got: n });
    }
    if r < 1 {
        return Err(Error::Empty);
    }
    if r > n {
        return Err(Error::TooManyHypersurfaces {
            count: r,
            ambient_dim: n,
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    Expansion,
    Cor11,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Identity::Expansion => "expansion",
            Identity::Cor11 => "cor11",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub n: usize,
    pub r: usize,
    pub seed: u64,
    pub trials: u64,
    pub failures: u64,
    /// Indices of failing trials, in increasing order.
    pub failed_trials: Vec<u64>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<9} n={} r={} seed={} trials={} failures={}",
            self.identity, self.n, self.r, self.seed, self.trials, self.failures
        )?;
        if !self.failed_trials.is_empty() {
            let list: Vec<String> = self.failed_trials.iter().map(u64::to_string).collect();
            write!(f, " failed_trials=[{}]", list.join(","))?;
        }
        Ok(())
    }
}

fn run(identity: Identity, n: usize, r: usize, trials: u64, seed: u64) -> Result<IdentityReport> {
    check_range(n, r)?;
    let mut failed_trials = Vec::new();
    for trial in 0..trials {
        let inst = RandomInstance::generate(n, r, seed, trial)?;
        let lhs = inst.thm1()?;
        let rhs = match identity {
            Identity::Expansion => milnor_expansion(&inst.milnor, &inst.csm, &inst.ranks, n)?,
            Identity::Cor11 => milnor_cor11(&inst.milnor, &inst.csm, &inst.cfj, &inst.ranks, n)?,
        };
        if lhs != rhs {
            failed_trials.push(trial);
        }
    }
    Ok(IdentityReport {
        identity,
        n,
        r,
        seed,
        trials,
        failures: failed_trials.len() as u64,
        failed_trials,
    })
}

/// Compares the product formula against the signed expansion on random instances.
pub fn check_expansion_identity(n: usize, r: usize, trials: u64, seed: u64) -> Result<IdentityReport> {
    run(Identity::Expansion, n, r, trials, seed)
}

/// Compares the product formula against the telescoped formula on random instances.
pub fn check_cor11_identity(n: usize, r: usize, trials: u64, seed: u64) -> Result<IdentityReport> {
    run(Identity::Cor11, n, r, trials, seed)
}

/// Both checks for every `n` in `n_range` and `1 <= r <= min(max_r, n)`.
pub fn sweep(
    n_range: std::ops::RangeInclusive<usize>,
    max_r: usize,
    trials: u64,
    seed: u64,
) -> Result<Vec<IdentityReport>> {
    let mut reports = Vec::new();
    for n in n_range {
        for r in 1..=max_r.min(n) {
            reports.push(check_expansion_identity(n, r, trials, seed)?);
            reports.push(check_cor11_identity(n, r, trials, seed)?);
        }
    }
    Ok(reports)
}
