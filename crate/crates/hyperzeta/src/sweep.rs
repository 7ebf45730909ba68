//! Parallel sweeps over H_n with checkpointed, resumable caches.
//!
//! Work is split into shards along the fixed enumeration order (full mode)
//! or the seeded draw order (sampled mode). Workers share nothing mutable;
//! each shard's records are computed in parallel, collected in order, and
//! appended with a checkpoint marker, so the final bytes are independent
//! of the thread count and a killed run resumes to the identical file.

use crate::cache::{scan_cache, CacheHeader, CacheRecord, CacheScan, CacheWriter, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::family::{self, FamilyCursor, FamilyKind};
use crate::field::{field_create, FieldSpec};
use crate::lpoly::LData;
use crate::poly::Poly;
use crate::selberg::CutoffPolicy;
use crate::stats::{SweepRecord, SweepSample};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::path::{Path, PathBuf};

/// Monic indices per shard in full mode; samples per shard in sampled mode.
const FULL_SHARD: u64 = 16384;
const SAMPLED_SHARD: u64 = 4096;

/// Run configuration for sweeps and the analysis drivers.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub p: u64,
    pub e: u32,
    pub n: u32,
    pub full: bool,
    pub samples: u64,
    pub seed: u64,
    pub x: u32,
    pub c: Option<f64>,
    pub threads: usize,
    /// Enumeration budget: full mode refuses q^n beyond this.
    pub budget: u64,
}

impl RunConfig {
    pub fn policy(&self, q: u64) -> Result<CutoffPolicy> {
        match self.c {
            Some(c) => CutoffPolicy::new(q, self.x, c),
            None => CutoffPolicy::with_default_c(q, self.x),
        }
    }

    pub fn header(&self) -> CacheHeader {
        CacheHeader {
            schema_version: SCHEMA_VERSION,
            p: self.p,
            e: self.e,
            n: self.n,
            mode: if self.full { "full".into() } else { "sampled".into() },
            samples: if self.full { 0 } else { self.samples },
            seed: self.seed,
        }
    }

    /// Canonical cache filename for this config.
    pub fn cache_filename(&self) -> String {
        if self.full {
            format!("sweep_p{}_e{}_n{}_full.jsonl", self.p, self.e, self.n)
        } else {
            format!(
                "sweep_p{}_e{}_n{}_s{}_seed{}.jsonl",
                self.p, self.e, self.n, self.samples, self.seed
            )
        }
    }
}

pub const DEFAULT_BUDGET: u64 = 10_000_000;

fn record_for(field: &FieldSpec, d: &Poly) -> Result<CacheRecord> {
    let ld = LData::powersum(d)?;
    let phases = ld.eigenphases()?;
    let cv = ld.central_value()?;
    Ok(CacheRecord {
        schema_version: SCHEMA_VERSION,
        q: field.q(),
        modulus: field.modulus().to_vec(),
        d: d.coeffs().to_vec(),
        lambda: ld.lambda(),
        delta: ld.delta(),
        lstar: ld.lstar_coeffs().to_vec(),
        thetas: phases.thetas,
        m: cv.m,
        n: cv.n,
    })
}

/// The discriminants of one run, in the canonical order. In sampled mode
/// the draws are deduplicated (records are 1:1 with distinct D); a request
/// for at least |H_n| samples degenerates to the full enumeration.
fn plan_discriminants(field: &FieldSpec, config: &RunConfig) -> Result<(Vec<Poly>, bool)> {
    let hn = family::family_count(field, FamilyKind::Squarefree, config.n);
    let full = config.full || config.samples >= hn;
    if full {
        let span = FamilyCursor::monic_span(field, config.n);
        if span > config.budget {
            return Err(Error::BudgetExceeded(format!(
                "full sweep enumerates q^n = {span} monic polynomials (budget {})",
                config.budget
            )));
        }
        Ok((
            FamilyCursor::new(field, FamilyKind::Squarefree, config.n).collect(),
            true,
        ))
    } else {
        let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
        let mut seen: HashSet<Vec<u64>> = HashSet::with_capacity(config.samples as usize);
        let mut out = Vec::with_capacity(config.samples as usize);
        let q = field.q();
        while out.len() < config.samples as usize {
            let mut coeffs = vec![0u64; config.n as usize + 1];
            for slot in coeffs.iter_mut().take(config.n as usize) {
                *slot = rng.gen_range(0..q);
            }
            coeffs[config.n as usize] = 1;
            let p = Poly::new(field, coeffs);
            if p.is_squarefree()? && seen.insert(p.coeffs().to_vec()) {
                out.push(p);
            }
        }
        Ok((out, false))
    }
}

pub struct SweepOutcome {
    pub path: PathBuf,
    pub records: u64,
    pub shards_skipped: u64,
    pub shards_computed: u64,
}

/// Run (or resume) a sweep, writing the cache to `path`.
pub fn run_sweep(config: &RunConfig, path: &Path) -> Result<SweepOutcome> {
    let field = field_create(config.p, config.e, None)?;
    let (discs, _) = plan_discriminants(&field, config)?;
    let shard_size = if config.full { FULL_SHARD } else { SAMPLED_SHARD } as usize;
    let header = config.header();

    let (mut writer, start_shard) = if path.exists() {
        let scan = scan_cache(path)?;
        if scan.header != header {
            return Err(Error::IncompatibleCache(format!(
                "existing cache at {} was produced by a different config",
                path.display()
            )));
        }
        let w = CacheWriter::resume(path, scan.valid_bytes, scan.complete_shards)?;
        (w, scan.complete_shards)
    } else {
        (CacheWriter::create(path, &header)?, 0)
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::PreconditionViolated(format!("thread pool: {e}")))?;

    let shards: Vec<&[Poly]> = discs.chunks(shard_size).collect();
    let mut computed = 0u64;
    for (idx, shard) in shards.iter().enumerate() {
        if (idx as u64) < start_shard {
            continue;
        }
        let records: Vec<CacheRecord> = pool.install(|| {
            shard
                .par_iter()
                .map(|d| record_for(&field, d))
                .collect::<Result<Vec<_>>>()
        })?;
        for r in &records {
            writer.write_record(r)?;
        }
        writer.checkpoint()?;
        computed += 1;
    }
    // an empty plan still needs its (single, empty) checkpoint
    if shards.is_empty() && start_shard == 0 {
        writer.checkpoint()?;
        computed = 1;
    }
    Ok(SweepOutcome {
        path: path.to_path_buf(),
        records: discs.len() as u64,
        shards_skipped: start_shard,
        shards_computed: computed,
    })
}

/// Rebuild an analysis sample from a cache: exact integer data is
/// revalidated through `LData::from_parts`, prime sums are recomputed from
/// D, and log |L| values come from the validated coefficients.
pub fn sample_from_cache(scan: &CacheScan, config: &RunConfig) -> Result<SweepSample> {
    let field = field_create(scan.header.p, scan.header.e, None)?;
    let policy = config.policy(field.q())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::PreconditionViolated(format!("thread pool: {e}")))?;
    let records: Vec<SweepRecord> = pool.install(|| {
        scan.records
            .par_iter()
            .map(|rec| -> Result<SweepRecord> {
                let d = Poly::new(&field, rec.d.clone());
                let ld = LData::from_parts(
                    field.clone(),
                    d,
                    rec.lambda,
                    rec.delta,
                    rec.lstar.clone(),
                )?;
                let cv = ld.central_value()?;
                if (cv.m, cv.n) != (rec.m, rec.n) {
                    return Err(Error::CorruptCache(
                        "cached central value disagrees with coefficients".into(),
                    ));
                }
                let mut r = crate::stats::record_of(&ld, &policy)?;
                // keep the cached eigenphases: they were validated at write
                // time and re-deriving them is the only nondeterministic cost
                if r.thetas.len() == rec.thetas.len() {
                    r.thetas = rec.thetas.clone();
                }
                Ok(r)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(SweepSample {
        q: field.q(),
        n: scan.header.n,
        x: config.x,
        c: policy.c(),
        full: scan.header.mode == "full",
        seed: scan.header.seed,
        records,
    })
}

/// In-memory sweep (no cache file): used by the verification suites and
/// the acceptance tests.
pub fn sample_in_memory(config: &RunConfig) -> Result<SweepSample> {
    let field = field_create(config.p, config.e, None)?;
    let policy = config.policy(field.q())?;
    let (discs, full) = plan_discriminants(&field, config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::PreconditionViolated(format!("thread pool: {e}")))?;
    let records: Vec<SweepRecord> = pool.install(|| {
        discs
            .par_iter()
            .map(|d| -> Result<SweepRecord> {
                let ld = LData::powersum(d)?;
                crate::stats::record_of(&ld, &policy)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(SweepSample {
        q: field.q(),
        n: config.n,
        x: config.x,
        c: policy.c(),
        full,
        seed: config.seed,
        records,
    })
}
