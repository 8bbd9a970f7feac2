//! Experiment runners. Each produces plain rows; [`super::csv`] writes them.

use rayon::prelude::*;

use crate::adversary::{
    few_deep_index, pack_greedy, pack_isomorphic, play_game, realize, reconstruct, separation_budget, si_adversary_game,
};
use crate::algorithms::oblivious::log_log_ceil;
use crate::algorithms::{run_block_sorting, run_clairvoyant, run_median_recursion, Algorithm};
use crate::instance::{realize_instance, Instance};
use crate::oracle::CountingOracle;
use crate::profile::ClusterProfile;
use crate::setint::SiAlgorithm;
use crate::{Error, Result};

use super::random::{random_profile, rng_for};

/// Where the profiles of a sweep come from.
#[derive(Clone, Debug, PartialEq)]
pub enum ProfileSource {
    Fixed(Vec<ClusterProfile>),
    /// `count` random profiles per `n`.
    Random {
        count: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    pub n: Vec<usize>,
    pub profiles: ProfileSource,
    pub algorithms: Vec<Algorithm>,
    pub repetitions: usize,
    pub seed: u64,
    pub output: Option<std::path::PathBuf>,
}

impl ExperimentConfig {
    pub fn new(name: &str, n: Vec<usize>, seed: u64) -> Self {
        ExperimentConfig {
            name: name.into(),
            n,
            profiles: ProfileSource::Random { count: 50 },
            algorithms: Vec::new(),
            repetitions: 1,
            seed,
            output: None,
        }
    }

    /// `(profile_id, profile)` pairs for one `n`, reproducible from the seed.
    pub fn profiles_for(&self, n: usize) -> Vec<(usize, ClusterProfile)> {
        match &self.profiles {
            ProfileSource::Fixed(list) => list.iter().cloned().enumerate().collect(),
            ProfileSource::Random { count } => (0..*count)
                .map(|id| (id, random_profile(n, &mut rng_for(self.seed ^ n as u64, id as u64))))
                .collect(),
        }
    }
}

pub fn log_log(n: usize) -> f64 {
    if n < 4 {
        1.0
    } else {
        (n as f64).log2().log2()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompetitiveRow {
    pub n: usize,
    pub profile_id: usize,
    pub repetition: usize,
    pub clairvoyant_cmp: u64,
    pub oblivious_cmp: u64,
    pub ratio: f64,
    pub ratio_per_loglog: f64,
}

pub fn competitive_row(
    profile: &ClusterProfile,
    profile_id: usize,
    repetition: usize,
    seed: u64,
) -> Result<CompetitiveRow> {
    let inst = realize_instance(profile, seed);
    let clair = run_clairvoyant(&mut CountingOracle::new(&inst), profile)?;
    let obl = Algorithm::Oblivious.run(&mut CountingOracle::new(&inst))?;
    let ratio = obl.comparisons as f64 / clair.comparisons.max(1) as f64;
    Ok(CompetitiveRow {
        n: profile.n(),
        profile_id,
        repetition,
        clairvoyant_cmp: clair.comparisons,
        oblivious_cmp: obl.comparisons,
        ratio,
        ratio_per_loglog: ratio / log_log(profile.n()),
    })
}

pub fn sweep_competitive(config: &ExperimentConfig) -> Result<Vec<CompetitiveRow>> {
    let jobs: Vec<(usize, usize, ClusterProfile)> = config
        .n
        .iter()
        .flat_map(|&n| config.profiles_for(n))
        .flat_map(|(id, p)| (0..config.repetitions).map(move |r| (id, r, p.clone())))
        .collect();
    jobs.par_iter()
        .map(|(id, rep, p)| competitive_row(p, *id, *rep, config.seed.wrapping_add((*id * 7919 + *rep) as u64)))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeparationRow {
    pub n: usize,
    pub algo: String,
    pub rounds: u64,
    pub survived: bool,
    pub i: u32,
    pub l: usize,
    pub c_l: usize,
    /// `C(L) <= n / 2^(i-3)`.
    pub c_bound_ok: bool,
    pub median_cmp: u64,
    pub median_found: bool,
    pub ratio: f64,
    pub consistent: bool,
}

/// Plays the separation game, packs clusters of size `L = n / 2^(2^(i-1))`
/// along chains, and solves the realized input with Median Recursion.
pub fn separation_row(algorithm: &Algorithm, n: usize) -> Result<SeparationRow> {
    let rounds = separation_budget(n);
    let game = play_game(algorithm, n, rounds)?;
    let i = few_deep_index(&game.state, n)?;
    if i == 0 {
        return Err(Error::Usage(format!("n = {n} is too small for the separation game")));
    }
    let shift = 1u32 << (i - 1);
    let l = if shift >= usize::BITS { 1 } else { (n >> shift).max(1) };
    let assignment = pack_greedy(&game.state, l);
    let inst = realize(&game.state, &assignment)?;
    let profile = assignment.profile();
    let (c_l, _) = profile.cd(l)?;
    let c_bound_ok = (c_l as u128) << i <= 8 * n as u128;
    let (report, _) = run_median_recursion(&mut CountingOracle::new(&inst), l)?;
    let consistent = game.transcript.replay(&inst) && inst.verify_graph(&profile);
    Ok(SeparationRow {
        n,
        algo: algorithm.to_string(),
        rounds: game.state.rounds(),
        survived: game.halted.is_none() && !game.transcript.contains_equal(),
        i,
        l,
        c_l,
        c_bound_ok,
        median_cmp: report.comparisons,
        median_found: report.outcome.is_duplicate(),
        ratio: game.state.rounds() as f64 / report.comparisons.max(1) as f64,
        consistent,
    })
}

pub fn sweep_separation(algorithm: &Algorithm, ns: &[usize]) -> Result<Vec<SeparationRow>> {
    ns.par_iter().map(|&n| separation_row(algorithm, n)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundsRow {
    pub profile_id: usize,
    pub n: usize,
    pub m: usize,
    pub linear_subset: Option<bool>,
    pub approx_factor: f64,
    pub block_iterations: usize,
    pub block_iteration_bound: usize,
    pub block_found: bool,
}

impl BoundsRow {
    pub fn ok(&self) -> bool {
        self.linear_subset != Some(false)
            && self.approx_factor <= 3.0
            && self.block_iterations <= self.block_iteration_bound
            && self.block_found
    }

    pub fn violation(&self) -> Option<String> {
        if self.linear_subset == Some(false) {
            Some(format!("profile {}: linear-subset inequality fails", self.profile_id))
        } else if self.approx_factor > 3.0 {
            Some(format!(
                "profile {}: approximation factor {:.4} > 3",
                self.profile_id, self.approx_factor
            ))
        } else if self.block_iterations > self.block_iteration_bound {
            Some(format!(
                "profile {}: {} block iterations > {}",
                self.profile_id, self.block_iterations, self.block_iteration_bound
            ))
        } else if !self.block_found {
            Some(format!("profile {}: block sorting gave up", self.profile_id))
        } else {
            None
        }
    }
}

pub fn bounds_row(profile: &ClusterProfile, profile_id: usize, seed: u64) -> Result<BoundsRow> {
    let linear_subset = if profile.m() >= 2 {
        Some(profile.check_linear_subset()?)
    } else {
        None
    };
    let (l2, best) = profile.select_l2();
    let approx = profile.approx_l2();
    let (c, d) = profile.cd(l2)?;
    let inst = realize_instance(profile, seed);
    let (report, iterations) = run_block_sorting(&mut CountingOracle::new(&inst), 2 * d)?;
    // without duplicates nothing can be found; the iteration bound still applies
    let found = report.outcome.is_duplicate() || profile.m() == profile.n();
    Ok(BoundsRow {
        profile_id,
        n: profile.n(),
        m: profile.m(),
        linear_subset,
        approx_factor: approx.objective / best,
        block_iterations: iterations,
        block_iteration_bound: 1 + c.div_ceil(d),
        block_found: found,
    })
}

pub fn check_bounds(config: &ExperimentConfig) -> Result<Vec<BoundsRow>> {
    let jobs: Vec<(usize, ClusterProfile)> = config.n.iter().flat_map(|&n| config.profiles_for(n)).collect();
    jobs.par_iter()
        .map(|(id, p)| bounds_row(p, *id, config.seed.wrapping_add(*id as u64)))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DuelRow {
    pub n: usize,
    pub rounds: u64,
    pub algo: String,
    pub survived: bool,
    pub consistency: bool,
    pub clairvoyant_comparisons: u64,
}

/// Plays `algorithm` against the adversary for `rounds` comparisons (by
/// default the median lower bound of `profile`), realizes `profile`, and
/// measures the clairvoyant runner on the result.
pub fn duel(algorithm: &Algorithm, profile: &ClusterProfile, rounds: Option<u64>) -> Result<(DuelRow, Instance)> {
    let n = profile.n();
    let rounds = rounds.unwrap_or_else(|| profile.lower_bound_median().floor() as u64);
    let game = play_game(algorithm, n, rounds)?;
    let assignment = match pack_isomorphic(&game.state, profile) {
        Ok(a) => a,
        Err(_) => reconstruct(&game.state, profile)?.assignment,
    };
    let inst = realize(&game.state, &assignment)?;
    let consistency = game.transcript.replay(&inst) && inst.verify_graph(profile);
    let clair = run_clairvoyant(&mut CountingOracle::new(&inst), profile)?;
    Ok((
        DuelRow {
            n,
            rounds: game.state.rounds(),
            algo: algorithm.to_string(),
            survived: game.halted.is_none(),
            consistency,
            clairvoyant_comparisons: clair.comparisons,
        },
        inst,
    ))
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderRow {
    pub n: usize,
    /// Longest game against the doubling algorithm after which a size-two
    /// cluster can still be packed.
    pub rounds: u64,
    /// 1-based rank of the size-two cluster.
    pub k: usize,
    pub doubling_cmp: u64,
    pub quickselect_cmp: u64,
    pub ratio: f64,
}

/// Realizes `[2, 1 x (n - 2)]` against the doubling algorithm after the
/// longest survivable game, then runs both algorithms on the result.
pub fn order_model(n: usize) -> Result<(OrderRow, Instance)> {
    if n < 3 {
        return Err(Error::Usage("order model needs n >= 3".into()));
    }
    let mut sizes = vec![2];
    sizes.extend(std::iter::repeat_n(1, n - 2));
    let profile = ClusterProfile::new(sizes)?;
    let packs = |rounds: u64| -> Result<Option<(u64, Instance)>> {
        let game = play_game(&Algorithm::Doubling, n, rounds)?;
        Ok(match pack_isomorphic(&game.state, &profile) {
            Ok(a) => Some((game.state.rounds(), realize(&game.state, &a)?)),
            Err(_) => None,
        })
    };
    // packing feasibility only shrinks as the game goes on
    let (mut lo, mut hi) = (0u64, 4 * n as u64 * u64::from(usize::BITS - n.leading_zeros()));
    let mut best = packs(0)?.expect("the empty game always packs");
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match packs(mid)? {
            Some(found) => {
                lo = mid;
                best = found;
            }
            None => hi = mid - 1,
        }
    }
    let (rounds, inst) = best;
    let mut ranks: Vec<u64> = inst.ranks().collect();
    ranks.sort_unstable();
    let pair_rank = ranks
        .windows(2)
        .find(|w| w[0] == w[1])
        .map(|w| w[0])
        .expect("one cluster of size two");
    let k = pair_rank as usize + 1;
    let doubling = Algorithm::Doubling.run(&mut CountingOracle::new(&inst))?;
    let quick = Algorithm::Quickselect { k }.run(&mut CountingOracle::new(&inst))?;
    if !quick.outcome.is_duplicate() || !doubling.outcome.is_duplicate() {
        return Err(Error::Internal("order-model run missed the pair".into()));
    }
    Ok((
        OrderRow {
            n,
            rounds,
            k,
            doubling_cmp: doubling.comparisons,
            quickselect_cmp: quick.comparisons,
            ratio: doubling.comparisons as f64 / quick.comparisons as f64,
        },
        inst,
    ))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SiRow {
    pub n: usize,
    pub j: usize,
    pub rounds: u64,
    pub survived: bool,
    pub consistent: bool,
    pub clairvoyant_cmp: u64,
    pub clairvoyant_found: bool,
}

/// The set-intersection separation: the adversary against `algorithm`, then
/// the clairvoyant runner on the realized family member.
pub fn si_separation(algorithm: SiAlgorithm, n: usize) -> Result<SiRow> {
    let game = si_adversary_game(algorithm, n, None)?;
    let consistent = game.transcript.replay(&game.instance.joint())
        && game.instance.profile() == crate::setint::si_family(n, game.j)?;
    let report = SiAlgorithm::Clairvoyant { i: game.j }.run(&game.instance)?;
    Ok(SiRow {
        n,
        j: game.j,
        rounds: game.rounds,
        survived: game.halted.is_none(),
        consistent,
        clairvoyant_cmp: report.comparisons,
        clairvoyant_found: report.outcome.is_duplicate(),
    })
}

/// Branch count of the oblivious algorithm; the per-instance ratio against
/// any single branch's strategy is at most this.
pub fn oblivious_branches(n: usize) -> usize {
    2 * (log_log_ceil(n) as usize + 1) + 1
}
