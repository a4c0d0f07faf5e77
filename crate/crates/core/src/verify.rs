//! Exhaustive cross-check of the classifier against the exact solver.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cayley::CayleyGraph;
use crate::classifier::{classify_dim2, CaseLabel, Prediction};
use crate::dihedral::{check_modulus, ConnectionSet, DihedralElement};
use crate::error::{Error, Result};
use crate::metric::{dim2_basis_properties, metric_dimension_exact, SearchConfig};
use crate::structure::{recognize, StructureKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratedSet {
    pub set: ConnectionSet,
    pub generating: bool,
}

/// Every inverse-closed, identity-free `S ⊆ D_2n` with `2 <= |S| <= max_size`,
/// ordered by size and then by canonical member indices.
///
/// Subsets are assembled from inverse orbits (each involution alone, each
/// rotation `a^k` together with `a^-k`), so inverse-closure holds by
/// construction.
pub fn enumerate_connection_sets(n: u32, max_size: usize) -> Result<Vec<EnumeratedSet>> {
    check_modulus(n)?;
    if max_size < 2 {
        return Err(Error::InvalidParameter(format!(
            "max_size must be at least 2, got {max_size}"
        )));
    }
    let mut orbits: Vec<Vec<DihedralElement>> = Vec::new();
    for k in 1..n {
        let (x, y) = (DihedralElement::rotation(k.into(), n)?, DihedralElement::rotation(-i64::from(k), n)?);
        if x == y {
            orbits.push(vec![x]);
        } else if k < n - k {
            orbits.push(vec![x, y]);
        }
    }
    for k in 0..n {
        orbits.push(vec![DihedralElement::reflection(k.into(), n)?]);
    }

    fn walk(
        orbits: &[Vec<DihedralElement>],
        from: usize,
        current: &mut Vec<DihedralElement>,
        max_size: usize,
        out: &mut Vec<Vec<DihedralElement>>,
    ) {
        if current.len() >= 2 {
            out.push(current.clone());
        }
        for (i, orbit) in orbits.iter().enumerate().skip(from) {
            if current.len() + orbit.len() > max_size {
                continue;
            }
            current.extend_from_slice(orbit);
            walk(orbits, i + 1, current, max_size, out);
            current.truncate(current.len() - orbit.len());
        }
    }

    let mut raw = Vec::new();
    walk(&orbits, 0, &mut Vec::new(), max_size, &mut raw);
    let mut sets = raw
        .into_iter()
        .map(|members| ConnectionSet::new(n, members))
        .collect::<Result<Vec<_>>>()?;
    sets.sort_by_cached_key(|s| (s.len(), s.members().iter().map(|m| m.index()).collect::<Vec<_>>()));
    Ok(sets
        .into_iter()
        .map(|set| EnumeratedSet {
            generating: set.is_generating(),
            set,
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Checked,
    Skipped,
    NonGenerating,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub n: u32,
    pub set: String,
    pub generating: bool,
    pub status: Status,
    #[serde(rename = "case")]
    pub case_label: Option<CaseLabel>,
    pub predicted: Option<Prediction>,
    pub predicted_structure: Option<StructureKind>,
    pub solver_dimension: Option<usize>,
    pub solver_basis: Option<Vec<String>>,
    pub structure: Option<StructureKind>,
    /// Unique-shortest-path and degree conditions on a two-element basis.
    pub basis_properties: Option<bool>,
    /// `None` for skipped instances.
    pub agree: Option<bool>,
    pub skip_reason: Option<String>,
    pub elapsed_us: u64,
}

impl InstanceRecord {
    pub fn label(&self) -> String {
        format!("n={} {{{}}}", self.n, self.set)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseTotals {
    pub instances: usize,
    pub agreements: usize,
    /// Solver dimension -> number of instances.
    pub solver_dimensions: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub instances: usize,
    pub generating: usize,
    pub checked: usize,
    pub agreements: usize,
    pub skipped: usize,
    pub disagreements: Vec<String>,
    pub per_case: BTreeMap<String, CaseTotals>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub n_lo: u32,
    pub n_hi: u32,
    pub max_size: usize,
    pub max_vertices: usize,
    pub max_k: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub meta: Meta,
    pub records: Vec<InstanceRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn has_disagreements(&self) -> bool {
        !self.summary.disagreements.is_empty()
    }

    /// Zeroes wall-clock fields so that two runs can be compared directly.
    pub fn without_timing(mut self) -> Self {
        for r in &mut self.records {
            r.elapsed_us = 0;
        }
        self
    }
}

fn check_instance(n: u32, entry: &EnumeratedSet, config: &SearchConfig) -> Result<InstanceRecord> {
    let start = Instant::now();
    let set = &entry.set;
    let g = CayleyGraph::build(n, set)?;
    let mut rec = InstanceRecord {
        n,
        set: set.to_string(),
        generating: entry.generating,
        status: Status::NonGenerating,
        case_label: None,
        predicted: None,
        predicted_structure: None,
        solver_dimension: None,
        solver_basis: None,
        structure: None,
        basis_properties: None,
        agree: None,
        skip_reason: None,
        elapsed_us: 0,
    };

    if !entry.generating {
        // Nothing to classify; the graph must be disconnected.
        rec.agree = Some(!g.is_connected());
        rec.elapsed_us = start.elapsed().as_micros() as u64;
        return Ok(rec);
    }

    let class = classify_dim2(n, set)?;
    rec.case_label = Some(class.case_label);
    rec.predicted = Some(class.predicted);
    rec.predicted_structure = class.structure;

    let structure_ok = match recognize(&g) {
        Ok(verdict) => {
            rec.structure = Some(verdict.kind);
            match class.structure {
                Some(StructureKind::CubicBipartite) => {
                    g.regular_degree() == Some(3) && g.is_bipartite()
                }
                Some(kind) => verdict.kind == kind,
                None => true,
            }
        }
        Err(Error::VertexCapExceeded { .. }) => class.structure.is_none(),
        Err(e) => return Err(e),
    };

    match metric_dimension_exact(&g, config) {
        Ok(res) => {
            rec.status = Status::Checked;
            let dim = res.dimension;
            rec.solver_dimension = Some(dim);
            rec.solver_basis = Some(res.basis.iter().map(|&v| g.vertex(v).token()).collect());
            if dim == 2 {
                rec.basis_properties =
                    Some(dim2_basis_properties(&g, res.basis[0], res.basis[1])?.holds());
            }
            rec.agree = Some(
                class.dim2 == (dim == 2)
                    && class.predicted.admits(dim)
                    && structure_ok
                    && rec.basis_properties.unwrap_or(true),
            );
        }
        Err(e @ (Error::VertexCapExceeded { .. } | Error::SubsetCapExceeded { .. })) => {
            rec.status = Status::Skipped;
            rec.skip_reason = Some(e.to_string());
        }
        Err(e) => return Err(e),
    }
    rec.elapsed_us = start.elapsed().as_micros() as u64;
    Ok(rec)
}

fn summarize(records: &[InstanceRecord]) -> Summary {
    let mut s = Summary {
        instances: records.len(),
        ..Summary::default()
    };
    for r in records {
        if r.generating {
            s.generating += 1;
        }
        match r.status {
            Status::Skipped => s.skipped += 1,
            Status::Checked => s.checked += 1,
            Status::NonGenerating => {}
        }
        match r.agree {
            Some(true) => s.agreements += 1,
            Some(false) => s.disagreements.push(r.label()),
            None => {}
        }
        if let Some(label) = r.case_label {
            let t = s.per_case.entry(label.as_str().to_string()).or_default();
            t.instances += 1;
            if r.agree == Some(true) {
                t.agreements += 1;
            }
            if let Some(d) = r.solver_dimension {
                *t.solver_dimensions.entry(d).or_default() += 1;
            }
        }
    }
    s
}

/// Runs classifier, predictor, recogniser and solver on every enumerated
/// connection set for `n` in `[n_lo, n_hi]` with `|S| <= max_size`.
///
/// `config.parallelism` fans instances out over a thread pool; each solver
/// call runs sequentially. Record order does not depend on the pool size.
pub fn verify_range(
    n_lo: u32,
    n_hi: u32,
    max_size: usize,
    config: &SearchConfig,
) -> Result<VerificationReport> {
    check_modulus(n_lo)?;
    check_modulus(n_hi)?;
    if n_lo > n_hi {
        return Err(Error::InvalidParameter(format!(
            "empty range {n_lo}..={n_hi}"
        )));
    }
    let mut work = Vec::new();
    for n in n_lo..=n_hi {
        for entry in enumerate_connection_sets(n, max_size)? {
            work.push((n, entry));
        }
    }
    let per_instance = SearchConfig {
        parallelism: 1,
        ..*config
    };
    let run = |(n, entry): &(u32, EnumeratedSet)| check_instance(*n, entry, &per_instance);
    let records = if config.parallelism > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.parallelism)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(|| work.par_iter().map(run).collect::<Result<Vec<_>>>())?
    } else {
        work.iter().map(run).collect::<Result<Vec<_>>>()?
    };
    let summary = summarize(&records);
    Ok(VerificationReport {
        meta: Meta {
            n_lo,
            n_hi,
            max_size,
            max_vertices: config.max_vertices,
            max_k: config.max_k,
        },
        records,
        summary,
    })
}
