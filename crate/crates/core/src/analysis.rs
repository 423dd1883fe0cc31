//! One-call profile of a code: parameters, bound flags, covering radius,
//! external distance and the CR/UPWS verdicts with how each was obtained.

use alloc::format;
use alloc::vec::Vec;

use crate::code::{bounds_profile, packing_radius, spectra, Bounds, LinearCode, Spectra};
pub use crate::coset::Caps;
use crate::coset::{
    complete_regularity, coset_weight_distributions, covering_radius, implication_harness, upws_from_table, CosetTable,
    CrVerdict, DirectFacts, Engine, Implication, UpwsProvenance, UpwsVerdict,
};
use crate::error::{Error, Result};

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Computed from the code itself (enumeration, coset table).
    Direct,
    /// Implied by directly computed `d`, `s`, `ρ` via standard implications.
    TheoremDerived,
    /// Neither route was affordable.
    Undetermined,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Direct => "direct",
            Provenance::TheoremDerived => "theorem_derived",
            Provenance::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flag {
    pub value: Option<bool>,
    pub provenance: Provenance,
}

impl Flag {
    pub fn direct(value: bool) -> Flag {
        Flag { value: Some(value), provenance: Provenance::Direct }
    }

    pub fn derived(value: bool) -> Flag {
        Flag { value: Some(value), provenance: Provenance::TheoremDerived }
    }

    pub fn undetermined() -> Flag {
        Flag { value: None, provenance: Provenance::Undetermined }
    }

    pub fn is_true(&self) -> bool {
        self.value == Some(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeProfile {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub d: usize,
    /// Packing radius.
    pub e: usize,
    /// Number of nonzero weights of the dual code.
    pub s: usize,
    /// Number of nonzero weights of the code.
    pub s_prime: usize,
    /// Covering radius.
    pub rho: usize,
    pub is_mds: Flag,
    pub is_griesmer: Flag,
    pub is_perfect: Flag,
    pub is_quasi_perfect: Flag,
    pub is_self_dual: Flag,
    pub is_cr: Flag,
    pub is_upws: Flag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub caps: Caps,
    pub engine: Engine,
    /// Stop the CR scan at the first witness.
    pub cr_early_exit: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { caps: Caps::default(), engine: Engine::Auto, cr_early_exit: true }
    }
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub profile: CodeProfile,
    pub spectra: Spectra,
    pub bounds: Bounds,
    /// Present when some engine fit under the caps.
    pub table: Option<CosetTable>,
    /// Why the table is absent.
    pub table_error: Option<Error>,
    pub cr: Option<CrVerdict>,
    pub upws: UpwsVerdict,
    /// Checked implications; present with the table.
    pub implications: Option<Vec<Implication>>,
}

/// Profiles a code with `0 < k < n`. Self-consistency failures between
/// independent computations are reported as [`Error::InvariantViolated`].
pub fn analyze(code: &LinearCode, options: &AnalysisOptions) -> Result<Analysis> {
    code.require_nontrivial_dimension()?;
    let caps = &options.caps;
    let (n, k, q) = (code.n(), code.k(), code.q());
    let spectra = spectra(code, caps.enumeration)?;
    let d = spectra.primal.min_distance().expect("k > 0");
    let e = packing_radius(d);
    let s = spectra.dual.num_nonzero_weights();
    let s_prime = spectra.primal.num_nonzero_weights();
    let bounds = bounds_profile(n, k, d, q);
    if !bounds.mds_griesmer_consistent {
        return Err(Error::InvariantViolated(format!("MDS and Griesmer verdicts disagree for [{n},{k},{d}]_{q}")));
    }
    let rho = covering_radius(code, caps)?;

    let (table, table_error) = match coset_weight_distributions(code, options.engine, caps) {
        Ok(t) => (Some(t), None),
        Err(err @ Error::CapExceeded { .. }) => (None, Some(err)),
        Err(err) => return Err(err),
    };

    let (cr, upws, implications, is_cr, is_upws) = match &table {
        Some(t) => {
            if t.covering_radius() != rho {
                return Err(Error::InvariantViolated(format!(
                    "coverage radius {rho} differs from table radius {}",
                    t.covering_radius()
                )));
            }
            if !t.conserves_weights() {
                return Err(Error::InvariantViolated("coset table column sums".into()));
            }
            let zero: Vec<u64> = t.distribution(0).iter().map(|&c| c as u64).collect();
            if zero != spectra.primal.counts() {
                return Err(Error::InvariantViolated("zero coset differs from the weight distribution".into()));
            }
            let cr = complete_regularity(t, options.cr_early_exit);
            let upws = upws_from_table(t);
            if upws.is_upws != (rho == s) {
                return Err(Error::InvariantViolated(format!(
                    "direct UPWS verdict {} but rho={rho}, s={s}",
                    upws.is_upws
                )));
            }
            let facts = DirectFacts { d, e, s, rho, is_cr: cr.is_cr, is_upws: upws.is_upws };
            let implications = implication_harness(t, &facts)?;
            let (is_cr, is_upws) = (Flag::direct(cr.is_cr), Flag::direct(upws.is_upws));
            (Some(cr), upws, Some(implications), is_cr, is_upws)
        }
        None => {
            let is_cr = if d + 1 >= 2 * s {
                Flag::derived(true)
            } else if rho != s {
                Flag::derived(false)
            } else {
                Flag::undetermined()
            };
            let upws = UpwsVerdict { is_upws: rho == s, beta: None, provenance: UpwsProvenance::RhoEqualsS };
            let is_upws = Flag::derived(upws.is_upws);
            (None, upws, None, is_cr, is_upws)
        }
    };

    let profile = CodeProfile {
        n,
        k,
        q,
        d,
        e,
        s,
        s_prime,
        rho,
        is_mds: Flag::direct(bounds.is_mds),
        is_griesmer: Flag::direct(bounds.is_griesmer),
        is_perfect: Flag::direct(rho == e),
        is_quasi_perfect: Flag::direct(rho == e + 1),
        is_self_dual: Flag::direct(code.is_self_dual()),
        is_cr,
        is_upws,
    };
    if !(e <= rho && rho <= s) {
        return Err(Error::InvariantViolated(format!("expected e <= rho <= s, got {e}, {rho}, {s}")));
    }
    Ok(Analysis { profile, spectra, bounds, table, table_error, cr, upws, implications })
}
