//! Exhaustive checks over families of crystals: the orbit-length bound
//! and the per-crystal property suites.

use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::SkippedShape;
use crate::crystal::{embed_parabolic_quotient, generate_crystal_capped, CrystalGraph};
use crate::error::{Error, Result};
use crate::key::{verify_key_properties, verify_pop_key_inequality, DemazureFamily};
use crate::pop::{orbit_lengths, poppability_violation, pop_agreement_on_quotient, pop_crystal};
use crate::report::{CheckOutcome, SuiteReport};
use crate::tableaux::Partition;

/// Orbit statistics of one crystal.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitSweepRecord {
    pub lambda: String,
    pub n: usize,
    pub max_orbit: usize,
    pub coxeter_number: usize,
    /// First vertex with the longest orbit.
    pub witness: String,
    pub vertices: usize,
    /// `T_min` is the only fixed point, so every orbit ends there.
    pub ends_at_min: bool,
}

impl OrbitSweepRecord {
    pub fn from_crystal(b: &CrystalGraph) -> Self {
        let lengths = orbit_lengths(b);
        let (mut max_orbit, mut witness) = (0, 0);
        for (v, &l) in lengths.iter().enumerate() {
            if l > max_orbit {
                (max_orbit, witness) = (l, v);
            }
        }
        let ends_at_min = (0..b.len()).all(|v| (pop_crystal(b, v) == v) == (v == b.min_vertex()));
        OrbitSweepRecord {
            lambda: b.lambda().to_string(),
            n: b.rank(),
            max_orbit,
            coxeter_number: b.rank() + 1,
            witness: b.tableau(witness).to_string(),
            vertices: b.len(),
            ends_at_min,
        }
    }

    /// The longest orbit has exactly `n + 1` elements and all orbits end
    /// at `T_min`.
    pub fn holds(&self) -> bool {
        self.max_orbit == self.coxeter_number && self.ends_at_min
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitSweep {
    pub records: Vec<OrbitSweepRecord>,
    pub skipped: Vec<SkippedShape>,
}

impl OrbitSweep {
    pub fn failures(&self) -> Vec<&OrbitSweepRecord> {
        self.records.iter().filter(|r| !r.holds()).collect()
    }
}

/// Nonzero shapes with `|λ| ≤ max_cells` and `ℓ ≤ n ≤ max_n`, split into
/// those within `cap` vertices and the skipped rest.
pub fn shapes_up_to(max_n: usize, max_cells: usize, cap: usize) -> Result<(Vec<Partition>, Vec<SkippedShape>)> {
    let mut shapes = Vec::new();
    let mut skipped = Vec::new();
    for n in 1..=max_n {
        for size in 1..=max_cells {
            for parts in crate::partitions_of(size, n) {
                let lambda = Partition::new(&parts, n)?;
                let vertices = lambda.hook_content_count();
                if vertices > cap as u128 {
                    skipped.push(SkippedShape {
                        lambda: lambda.to_string(),
                        n,
                        vertices,
                    });
                } else {
                    shapes.push(lambda);
                }
            }
        }
    }
    Ok((shapes, skipped))
}

pub(crate) fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Parse(format!("thread pool: {e}")))
}

/// Orbit statistics for every nonzero shape in range. `jobs = 0` uses
/// every core.
pub fn orbit_sweep(max_n: usize, max_cells: usize, cap: usize, jobs: usize) -> Result<OrbitSweep> {
    let (shapes, skipped) = shapes_up_to(max_n, max_cells, cap)?;
    let records = thread_pool(jobs)?.install(|| {
        shapes
            .par_iter()
            .map(|lambda| Ok(OrbitSweepRecord::from_crystal(&generate_crystal_capped(lambda, cap)?)))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(OrbitSweep { records, skipped })
}

/// Structural checks: cardinality, poppability, the orbit bound and
/// agreement of `Pop_◊` with `Pop_W` on the embedded quotient.
pub fn verify_structure(b: &CrystalGraph) -> Result<SuiteReport> {
    let mut size = CheckOutcome::new("vertex count equals the hook-content product");
    size.record(b.len() as u128 == b.lambda().hook_content_count(), || {
        format!("{} vertices, formula {}", b.len(), b.lambda().hook_content_count())
    });

    let mut poppable = CheckOutcome::new("every color-restricted component has one source");
    let violation = poppability_violation(b)?;
    poppable.record(violation.is_none(), || {
        let v = violation.as_ref().expect("checked");
        format!("colors {:?}: {} sources near {}", v.colors.iter().collect::<Vec<_>>(), v.sources, b.tableau(v.vertex))
    });

    let mut orbits = CheckOutcome::new("longest Pop orbit has n+1 elements and orbits end at T_min");
    if !b.lambda().is_empty() {
        let r = OrbitSweepRecord::from_crystal(b);
        orbits.record(r.holds(), || format!("max orbit {} at {}", r.max_orbit, r.witness));
    }

    let mut quotient = CheckOutcome::new("Pop on the embedded quotient matches Pop_W");
    let emb = embed_parabolic_quotient(b);
    let agreement = pop_agreement_on_quotient(b, &emb);
    for _ in 0..agreement.checked {
        quotient.record(true, String::new);
    }
    for (w, lhs, rhs) in &agreement.mismatches {
        quotient.record(false, || format!("{w}: crystal {lhs}, quotient {rhs}"));
    }

    Ok(SuiteReport {
        subject: format!("structure of B_({})^{}", b.lambda(), b.rank()),
        checks: vec![size, poppable, orbits, quotient],
    })
}

/// Every per-crystal suite: structure, key properties and the pop/key
/// inequality.
pub fn verify_crystal(b: &CrystalGraph) -> Result<Vec<SuiteReport>> {
    let fam = DemazureFamily::build(b)?;
    let emb = embed_parabolic_quotient(b);
    Ok(vec![
        verify_structure(b)?,
        verify_key_properties(b, &fam, Some(&emb))?,
        verify_pop_key_inequality(b, &fam)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::generate_crystal;

    #[test]
    fn b21_suites_pass() {
        let b = generate_crystal(&Partition::new(&[2, 1], 2).unwrap()).unwrap();
        let reports = verify_crystal(&b).unwrap();
        assert!(reports.iter().all(SuiteReport::passed), "{reports:?}");
        let r = OrbitSweepRecord::from_crystal(&b);
        assert_eq!((r.max_orbit, r.coxeter_number), (3, 3));
    }

    #[test]
    fn small_orbit_sweep() {
        let sweep = orbit_sweep(3, 4, 100_000, 2).unwrap();
        assert!(sweep.failures().is_empty());
        assert!(sweep.skipped.is_empty());
        assert_eq!(sweep.records.len(), 4 + 8 + 10);
    }
}
