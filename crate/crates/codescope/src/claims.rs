//! Registry of checkable statements about MDS codes, each run against
//! explicit constructions and exact computations.
//!
//! A claim ends as `verified`, `refuted` (with the data that contradicts it)
//! or `skipped_cost` (with the cap that stopped it).

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use codescope_core::analysis::{analyze, Analysis, AnalysisOptions};
use codescope_core::classify::{
    canonical_form, classify_mds, dual_bijection, enumerate_mds_systematic, equivalence_classes, verify_no_mds,
    Equivalence,
};
use codescope_core::code::{a_d_formula, spectra};
use codescope_core::constructions as cons;
use codescope_core::coset::{
    complete_regularity, coset_weight_distributions, covering_radius, upws_from_table, CosetTable, SyndromeSpace,
};
use codescope_core::gf::{count_diagonal_quadratic, prime_powers_up_to};
use codescope_core::{Caps, Elem, Engine, Error, Field, LinearCode};

use crate::caps::CostLevel;
use crate::report::{coset_witness, CodeJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Refuted,
    SkippedCost,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub claim_id: &'static str,
    pub statement: &'static str,
    pub verdict: Verdict,
    pub witness: Value,
    pub cost_ms: u64,
}

/// Execution settings shared by all claims.
#[derive(Clone, Copy, Debug)]
pub struct Context {
    pub level: CostLevel,
    pub caps: Caps,
}

impl Context {
    pub fn new(level: CostLevel) -> Self {
        Context { level, caps: level.caps() }
    }

    fn options(&self) -> AnalysisOptions {
        AnalysisOptions { caps: self.caps, ..AnalysisOptions::default() }
    }
}

pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    run: fn(&Context) -> Result<Outcome, Error>,
}

struct Outcome {
    holds: bool,
    witness: Value,
}

/// Collects failed expectations; the claim holds when none failed.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
}

impl Checks {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, mut witness: Value) -> Outcome {
        witness["failures"] = json!(self.failures);
        Outcome { holds: self.failures.is_empty(), witness }
    }
}

fn field(q: u32) -> Result<Arc<Field>, Error> {
    Ok(Arc::new(Field::of_order(q)?))
}

fn label(c: &LinearCode, d: usize) -> String {
    format!("[{},{},{}]_{}", c.n(), c.k(), d, c.q())
}

fn profile_json(a: &Analysis) -> Value {
    let p = &a.profile;
    json!({
        "d": p.d, "e": p.e, "rho": p.rho, "s": p.s, "s_prime": p.s_prime,
        "is_cr": p.is_cr.value, "is_cr_provenance": p.is_cr.provenance.name(),
        "is_upws": p.is_upws.value, "is_upws_provenance": p.is_upws.provenance.name(),
        "is_self_dual": p.is_self_dual.value,
        "packing_coefficients": a.upws.beta.as_ref().map(|b| b.as_fractions()),
    })
}

fn groups_json(t: &CosetTable) -> Value {
    Value::Array(
        t.groups()
            .iter()
            .map(|g| {
                json!({
                    "weight": g.weight,
                    "cosets": g.cosets(),
                    "distributions": g.classes.iter().map(|c| json!({
                        "distribution": c.distribution, "multiplicity": c.multiplicity
                    })).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub fn catalog() -> Vec<Claim> {
    vec![
        Claim { id: "C1", statement: "For odd q, -1 is a square in F_q exactly when q = 1 (mod 4); checked for q <= 49.", run: c1 },
        Claim {
            id: "C2",
            statement: "For odd q and nonzero a1, a2, t, the equation a1 x1^2 + a2 x2^2 = t has q - chi(-a1 a2) solutions; all triples for odd q <= 13.",
            run: c2,
        },
        Claim { id: "C3", statement: "A self-dual [4,2,3]_q code exists for every prime power q <= 32 except q = 2 and q = 5.", run: c3 },
        Claim {
            id: "C4",
            statement: "Repetition codes [n,1,n]_q have covering radius n - ceil(n/q), which is floor(n/2) for q = 2; q <= 8, n <= 8.",
            run: c4,
        },
        Claim {
            id: "C5",
            statement: "The ternary repetition code of length 4 is not completely regular; 0011 and 1200 are both at distance 2 but have codeword distances 2,2,4 and 2,3,3.",
            run: c5,
        },
        Claim { id: "C6", statement: "For q > 2 and n > 2 the repetition code [n,1,n]_q is UPWS exactly when q >= n; binary ones always are.", run: c6 },
        Claim {
            id: "C7",
            statement: "A self-dual [2,1,2]_q code exists exactly when q is even or q = 1 (mod 4); such codes are CR. Checked for q <= 49.",
            run: c7,
        },
        Claim { id: "C8", statement: "The [10,3,8]_8 hyperoval code has covering radius 6 and external distance 7, so it is not UPWS.", run: c8 },
        Claim { id: "C9", statement: "The [6,3,4]_4 hyperoval code and the [10,7,4]_8 dual hyperoval code are CR.", run: c9 },
        Claim {
            id: "C10",
            statement: "[q+1,2,q]_q simplex codes: CR for q = 3, 4; not UPWS for q = 5, 7; for q = 8 rho = s = 7 (UPWS) but not CR.",
            run: c10,
        },
        Claim { id: "C11", statement: "The doubly extended RS codes [5,2,4]_4 and [9,6,4]_8 are CR with rho = s = 3.", run: c11 },
        Claim { id: "C12", statement: "The doubly extended RS codes [6,3,4]_5, [8,3,6]_7 and [8,4,5]_7 are not UPWS.", run: c12 },
        Claim {
            id: "C13",
            statement: "Every Reed-Solomon code with n <= q (q in {4,5,7,8}, 2 <= k <= n-2) has rho = s = d-1 and is UPWS.",
            run: c13,
        },
        Claim {
            id: "C14",
            statement: "No [6,4,3]_4 or [6,2,5]_4 code exists: exhaustive search is empty and an MDS [6,2,5]_4 code would need 18 > 16 words of weight 5.",
            run: c14,
        },
        Claim {
            id: "C15",
            statement: "Over F_5 the nontrivial MDS codes form one class for each (n,k) in {(6,4),(6,3),(6,2),(5,3),(5,2),(4,2)}, with the expected CR, UPWS and self-duality properties.",
            run: c15,
        },
        Claim { id: "C16", statement: "There is no nontrivial MDS code of length 7 over F_5.", run: c16 },
        Claim { id: "C17", statement: "Hamming codes [q+1,q-1,3]_q have external distance 1 for q in {3,4,5,8}.", run: c17 },
        Claim {
            id: "C18",
            statement: "Members of the CR MDS families are CR: [n,n-1,2]_q, [n,1,n]_2, [2^m+2,2^m-1,4], Hamming, doubly extended RS [2^m+1,2^m-2,4], and [4,2,3]_4, [5,3,3]_5, [4,2,3]_5.",
            run: c18,
        },
    ]
}

/// Runs the selected claims (all when `filter` is empty) in catalog order.
pub fn run_claims(filter: &[String], ctx: &Context) -> Result<Vec<ClaimResult>, Error> {
    let all = catalog();
    let known: BTreeSet<&str> = all.iter().map(|c| c.id).collect();
    if let Some(bad) = filter.iter().find(|f| !known.contains(f.as_str())) {
        return Err(Error::UnknownName(bad.clone()));
    }
    Ok(all.iter().filter(|c| filter.is_empty() || filter.iter().any(|f| f == c.id)).map(|c| run_one(c, ctx)).collect())
}

pub fn run_one(claim: &Claim, ctx: &Context) -> ClaimResult {
    let start = Instant::now();
    let (verdict, witness) = match (claim.run)(ctx) {
        Ok(o) => (if o.holds { Verdict::Verified } else { Verdict::Refuted }, o.witness),
        Err(e @ Error::CapExceeded { .. }) => (Verdict::SkippedCost, json!({ "cap": e.to_string() })),
        Err(e) => (Verdict::Refuted, json!({ "error": e.to_string() })),
    };
    ClaimResult {
        claim_id: claim.id,
        statement: claim.statement,
        verdict,
        witness,
        cost_ms: start.elapsed().as_millis() as u64,
    }
}

fn c1(_: &Context) -> Result<Outcome, Error> {
    let mut checks = Checks::default();
    let mut rows = Vec::new();
    for q in prime_powers_up_to(49).into_iter().filter(|q| q % 2 == 1) {
        let f = Field::of_order(q)?;
        let m1 = f.neg(Elem::ONE);
        let square = f.elements().any(|x| f.mul(x, x) == m1);
        checks.expect(square == (q % 4 == 1), || format!("q = {q}: -1 square = {square}"));
        checks.expect(f.quadratic_character(m1)? == if square { 1 } else { -1 }, || format!("q = {q}: character"));
        rows.push(json!({ "q": q, "minus_one_is_square": square }));
    }
    Ok(checks.finish(json!({ "fields": rows })))
}

fn c2(_: &Context) -> Result<Outcome, Error> {
    let mut checks = Checks::default();
    let mut rows = Vec::new();
    for q in [3u32, 5, 7, 9, 11, 13] {
        let f = Field::of_order(q)?;
        let mut triples = 0u64;
        for a1 in f.nonzero() {
            for a2 in f.nonzero() {
                for t in f.nonzero() {
                    let c = count_diagonal_quadratic(&f, a1, a2, t)?;
                    triples += 1;
                    checks.expect(c.count as i64 == c.predicted, || {
                        format!(
                            "q = {q}, (a1, a2, t) = ({}, {}, {}): {} solutions, predicted {}",
                            a1.0, a2.0, t.0, c.count, c.predicted
                        )
                    });
                }
            }
        }
        rows.push(json!({ "q": q, "triples": triples }));
    }
    Ok(checks.finish(json!({ "fields": rows })))
}

fn c3(_: &Context) -> Result<Outcome, Error> {
    let mut checks = Checks::default();
    let mut rows = Vec::new();
    for q in prime_powers_up_to(32) {
        let f = field(q)?;
        let code = cons::self_dual_4_2_3(&f)?;
        let exists = code.is_some();
        checks.expect(exists == !matches!(q, 2 | 5), || format!("q = {q}: construction exists = {exists}"));
        let params = cons::self_dual_4_2_3_parameters(&f).map(|(a, b, x)| [a.0, b.0, x.0]);
        rows.push(json!({ "q": q, "exists": exists, "alpha_beta_xi": params }));
    }
    let mut searched = Vec::new();
    for q in [2u32, 3, 4, 5, 7] {
        let found = cons::self_dual_search(&field(q)?, 4, 2, 3)?;
        checks.expect(found.is_empty() == matches!(q, 2 | 5), || format!("q = {q}: search found {}", found.len()));
        searched.push(json!({ "q": q, "self_dual_codes": found.len() }));
    }
    Ok(checks.finish(json!({ "constructions": rows, "exhaustive_search": searched })))
}

fn c4(ctx: &Context) -> Result<Outcome, Error> {
    let mut checks = Checks::default();
    let mut rows = Vec::new();
    for q in [2u32, 3, 4, 5, 7, 8] {
        let f = field(q)?;
        for n in 2..=8usize {
            let c = cons::repetition(&f, n)?;
            let rho = covering_radius(&c, &ctx.caps)?;
            let expected = n - n.div_ceil(q as usize);
            checks.expect(rho == expected, || format!("q = {q}, n = {n}: rho = {rho}, expected {expected}"));
            if q == 2 {
                checks.expect(rho == n / 2, || format!("binary n = {n}: rho = {rho}"));
            }
            rows.push(json!({ "q": q, "n": n, "rho": rho }));
        }
    }
    Ok(checks.finish(json!({ "codes": rows })))
}

fn c5(ctx: &Context) -> Result<Outcome, Error> {
    let mut checks = Checks::default();
    let f = field(3)?;
    let c = cons::repetition(&f, 4)?;
    let t = coset_weight_distributions(&c, Engine::Auto, &ctx.caps)?;
    let h = c.parity_check();
    let space = SyndromeSpace::new(&f, h.rows());
    let codewords: Vec<Vec<Elem>> = (0..3).map(|a| c.encode(&[Elem(a)])).collect::<Result<_, _>>()?;
    let mut vectors = Vec::new();
    let mut dists = Vec::new();
    for v in [[0u16, 0, 1, 1], [1, 2, 0, 0]] {
        let v: Vec<Elem> = v.iter().map(|&x| Elem(x)).collect();
        let mut d: Vec<usize> = codewords.iter().map(|w| w.iter().zip(&v).filter(|(a, b)| a != b).count()).collect();
        d.sort_unstable();
        let s = space.pack(&h.apply(&f, &v)?);
        checks.expect(t.leader_weight(s) == 2, || format!("{v:?} is not at distance 2"));
        let dist = t.distribution(s).to_vec();
        let from_table: Vec<usize> =
            dist.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat_n(i, m as usize)).collect();
        checks.expect(from_table == d, || format!("table distribution {dist:?} disagrees with distances {d:?}"));
        vectors
            .push(json!({ "vector": v.iter().map(|e| e.0).collect::<Vec<_>>(), "distances": d, "distribution": dist }));
        dists.push(d);
    }
    checks.expect(dists[0] == [2, 2, 4] && dists[1] == [2, 3, 3], || format!("distances {dists:?}"));
    let cr = complete_regularity(&t, false);
    checks.expect(!cr.is_cr, || "code is CR".into());
    let pair = cr.witness.map(|(a, b)| [coset_witness(&c, &t, a), coset_witness(&c, &t, b)]);
    Ok(checks.finish(json!({ "vectors": vectors, "cr_witness": pair })))
}

fn c6(ctx: &Context) -> Result<Outcome, Error> {
    let mut checks = Checks::default();
    let mut rows = Vec::new();
    for q in [2u32, 3, 4, 5, 7, 8] {
        let f = field(q)?;
        for n in 3..=8usize {
            let c = cons::repetition(&f, n)?;
            let a = analyze(&c, &ctx.options())?;
            let p = &a.profile;
            let expected = q == 2 || q as usize >= n;
            checks.expect(p.is_upws.value == Some(expected), || {
                format!("q = {q}, n = {n}: UPWS = {:?}", p.is_upws.value)
            });
            let s_expected = if q == 2 { n / 2 } else { n - 1 };
            checks.expect(p.s == s_expected, || format!("q = {q}, n = {n}: s = {}", p.s));
            rows.push(json!({ "q": q, "n": n, "rho": p.rho, "s": p.s, "upws": p.is_upws.value, "provenance": p.is_upws.provenance.name() }));
        }
    }
    Ok(checks.finish(json!({ "codes": rows })))
}

fn c7(ctx: &Context) -> Result<Outcome, Error> {
    let mut checks = Checks::default();
    let mut rows = Vec::new();
    for q in prime_powers_up_to(49) {
        let f = field(q)?;
        let code = cons::self_dual_2_1_2(&f)?;
        let expected = q % 2 == 0 || q % 4 == 1;
        checks.expect(code.is_some() == expected, || format!("q = {q}: exists = {}", code.is_some()));
        let mut row = json!({ "q": q, "exists": code.is_some() });
        if let Some(c) = code {
            let a = analyze(&c, &ctx.options())?;
            checks
                .expect(c.is_self_dual() && a.profile.is_cr.is_true(), || format!("q = {q}: not a self-dual CR code"));
            let sum = c.direct_sum(&c)?;
            let d = spectra(&sum, ctx.caps.enumeration)?.primal.min_distance().unwrap_or(0);
            checks.expect(sum.is_self_dual() && d + sum.k() != sum.n() + 1, || format!("q = {q}: direct sum"));
            row["alpha"] = json!(c.generator().get(0, 1).0);
        }
        rows.push(row);
    }
    Ok(checks.finish(json!({ "fields": rows })))
}

fn c8(ctx: &Context) -> Result<Outcome, Error> {
    let mut checks = Checks::default();
    let f = field(8)?;
    let c = cons::hyperoval_code(&f)?;
    let rho = covering_radius(&c, &ctx.caps)?;
    let sp = spectra(&c, ctx.caps.enumeration)?;
    let dual_enumerated = c.dual().weight_distribution(ctx.caps.enumeration)?;
    checks.expect(dual_enumerated == sp.dual, || "MacWilliams and enumeration disagree".into());
    let s = dual_enumerated.num_nonzero_weights();
    checks.expect(rho == 6, || format!("rho = {rho}"));
    checks.expect(s == 7, || format!("s = {s}"));
    let mut witness = json!({ "rho": rho, "s": s, "dual_weight_distribution": dual_enumerated.counts() });
    let mut direct = Vec::new();
    let mut engines = vec![Engine::DualCharacter];
    if ctx.level == CostLevel::High {
        engines.push(Engine::Primal);
    }
    let mut tables: Vec<CosetTable> = Vec::new();
    for engine in engines {
        match coset_weight_distributions(&c, engine, &ctx.caps) {
            Ok(t) => {
                let upws = upws_from_table(&t).is_upws;
                checks.expect(!upws, || format!("{} table: packing system feasible", t.engine().name()));
                checks.expect(t.covering_radius() == rho, || format!("{} table radius", t.engine().name()));
                direct.push(json!({ "engine": t.engine().name(), "upws": upws, "distinct_distributions": t.distinct_distributions().len() }));
                tables.push(t);
            }
            Err(e @ Error::CapExceeded { .. }) => {
                direct.push(json!({ "engine": format!("{engine:?}"), "skipped": e.to_string() }))
            }
            Err(e) => return Err(e),
        }
    }
    if tables.len() == 2 {
        checks.expect(tables[0].distinct_distributions() == tables[1].distinct_distributions(), || {
            "engines disagree".into()
        });
        checks.expect(tables.iter().all(|t| t.conserves_weights()), || "column sums".into());
    }
    witness["direct_upws"] = json!(direct);
    Ok(checks.finish(witness))
}

fn c9(ctx: &Context) -> Result<Outcome, Error> {
    let mut checks = Checks::default();
    let mut rows = Vec::new();
    let codes = [cons::hyperoval_code(&field(4)?)?, cons::hyperoval_code(&field(8)?)?.dual()];
    for (c, d) in codes.iter().zip([4usize, 4]) {
        let t = coset_weight_distributions(c, Engine::DualCharacter, &ctx.caps)?;
        let cr = complete_regularity(&t, false);
        checks.expect(cr.is_cr, || format!("{} is not CR", label(c, d)));
        rows.push(json!({ "code": label(c, d), "engine": t.engine().name(), "cr": cr.is_cr, "rho": t.covering_radius(), "cosets": groups_json(&t) }));
    }
    // All [6,3,4]_4 codes, so the hyperoval code stands for its whole class.
    let f4 = field(4)?;
    let mats = enumerate_mds_systematic(&f4, 6, 3)?;
    let mut counts = serde_json::Map::new();
    for kind in [Equivalence::Permutation, Equivalence::Monomial, Equivalence::Semilinear] {
        counts.insert(kind.name().into(), equivalence_classes(&f4, &mats, kind)?.len().into());
    }
    checks.expect(counts["semilinear"] == 1, || {
        format!("[6,3,4]_4 splits into {} semilinear classes", counts["semilinear"])
    });
    let classes = json!({ "systematic_codes": mats.len(), "classes": counts });
    Ok(checks.finish(json!({ "codes": rows, "all_6_3_4_codes": classes })))
}

fn c10(ctx: &Context) -> Result<Outcome, Error> {
    let mut checks = Checks::default();
    let mut rows = Vec::new();
    for q in [3u32, 4, 5, 7, 8] {
        let f = field(q)?;
        let c = cons::simplex(&f)?;
        let engine = if q == 8 { Engine::Primal } else { Engine::Auto };
        let opts = AnalysisOptions { engine, cr_early_exit: false, ..ctx.options() };
        let a = match analyze(&c, &opts) {
            Ok(a) if a.table.is_some() || q != 8 => a,
            Ok(_) | Err(Error::CapExceeded { .. }) => {
                analyze(&c, &AnalysisOptions { engine: Engine::DualCharacter, ..opts })?
            }
            Err(e) => return Err(e),
        };
        let p = &a.profile;
        let name = label(&c, q as usize);
        match q {
            3 | 4 => checks.expect(p.is_cr.is_true(), || format!("{name} is not CR")),
            5 | 7 => {
                checks.expect(p.rho == q as usize - 2 && p.s == q as usize - 1, || {
                    format!("{name}: rho = {}, s = {}", p.rho, p.s)
                });
                checks.expect(p.is_upws.value == Some(false), || format!("{name} is UPWS"));
            }
            _ => {
                checks.expect(p.rho == 7 && p.s == 7, || format!("{name}: rho = {}, s = {}", p.rho, p.s));
                checks.expect(a.upws.beta.is_some(), || format!("{name}: no packing coefficients"));
                checks.expect(p.is_cr.value == Some(false), || format!("{name} is CR"));
            }
        }
        let mut row = json!({ "code": name, "profile": profile_json(&a) });
        if let Some(t) = &a.table {
            row["engine"] = json!(t.engine().name());
            if let Some((x, y)) = a.cr.as_ref().and_then(|cr| cr.witness) {
                row["cr_witness"] = json!([coset_witness(&c, t, x), coset_witness(&c, t, y)]);
            }
        }
        rows.push(row);
    }
    Ok(checks.finish(json!({ "codes": rows })))
}

fn c11(ctx: &Context) -> Result<Outcome, Error> {
    let mut checks = Checks::default();
    let mut rows = Vec::new();
    for (q, k) in [(4u32, 2usize), (8, 6)] {
        let c = cons::doubly_extended_rs(&field(q)?, k)?;
        let a = analyze(&c, &ctx.options())?;
        let p = &a.profile;
        checks.expect(p.is_cr.is_true() && p.rho == 3 && p.s == 3, || {
            format!("{}: CR = {:?}, rho = {}, s = {}", label(&c, p.d), p.is_cr.value, p.rho, p.s)
        });
        rows.push(json!({ "code": label(&c, p.d), "profile": profile_json(&a) }));
    }
    Ok(checks.finish(json!({ "codes": rows })))
}

fn c12(ctx: &Context) -> Result<Outcome, Error> {
    let mut checks = Checks::default();
    let mut rows = Vec::new();
    for (q, k) in [(5u32, 3usize), (7, 3), (7, 4)] {
        let c = cons::doubly_extended_rs(&field(q)?, k)?;
        let a = analyze(&c, &ctx.options())?;
        let p = &a.profile;
        checks.expect(p.is_upws.value == Some(false), || format!("{} is UPWS", label(&c, p.d)));
        rows.push(json!({ "code": label(&c, p.d), "profile": profile_json(&a) }));
    }
    Ok(checks.finish(json!({ "codes": rows })))
}

fn c13(ctx: &Context) -> Result<Outcome, Error> {
    let mut checks = Checks::default();
    let mut rows = Vec::new();
    for q in [4u32, 5, 7, 8] {
        let f = field(q)?;
        for n in 4..=q as usize {
            for k in 2..=n - 2 {
                let c = cons::reed_solomon(&f, n, k)?;
                let a = analyze(&c, &ctx.options())?;
                let p = &a.profile;
                let name = label(&c, p.d);
                checks.expect(p.rho == p.d - 1 && p.s == p.d - 1, || format!("{name}: rho = {}, s = {}", p.rho, p.s));
                checks.expect(a.upws.beta.is_some(), || format!("{name}: no direct packing coefficients"));
                rows.push(json!({ "code": name, "rho": p.rho, "s": p.s, "beta": a.upws.beta.as_ref().map(|b| b.as_fractions()) }));
            }
        }
    }
    Ok(checks.finish(json!({ "codes": rows })))
}

fn c14(_: &Context) -> Result<Outcome, Error> {
    let mut checks = Checks::default();
    let f = field(4)?;
    let k2 = enumerate_mds_systematic(&f, 6, 2)?;
    let k4 = enumerate_mds_systematic(&f, 6, 4)?;
    checks.expect(k2.is_empty(), || format!("{} [6,2,5]_4 codes found", k2.len()));
    checks.expect(k4.is_empty(), || format!("{} [6,4,3]_4 codes found", k4.len()));
    let needed = a_d_formula(6, 5, 4);
    let size = num_bigint::BigUint::from(16u32);
    checks.expect(needed > size, || format!("A_5 = {needed} does not exceed 16"));
    Ok(checks.finish(json!({
        "search": { "[6,2,5]_4": k2.len(), "[6,4,3]_4": k4.len() },
        "counting": { "a_5": needed.to_string(), "codewords": 16 },
    })))
}

fn c15(ctx: &Context) -> Result<Outcome, Error> {
    let mut checks = Checks::default();
    let f = field(5)?;
    let opts = ctx.options();
    let mut rows = Vec::new();
    let mut reports = std::collections::BTreeMap::new();
    for (n, k) in [(6usize, 4usize), (6, 3), (6, 2), (5, 3), (5, 2), (4, 2)] {
        let r = classify_mds(&f, n, k, Equivalence::Monomial, &opts)?;
        let mats = enumerate_mds_systematic(&f, n, k)?;
        let perm_classes = equivalence_classes(&f, &mats, Equivalence::Permutation)?.len();
        checks.expect(r.classes.len() == 1, || format!("[{n},{k}]_5: {} classes", r.classes.len()));
        if let Some(class) = r.classes.first() {
            let p = &class.analysis.profile;
            let name = format!("[{n},{k},{}]_5", p.d);
            match (n, k) {
                (6, 4) | (5, 3) => checks.expect(p.is_cr.is_true(), || format!("{name} is not CR")),
                (6, 2) => checks.expect(p.is_upws.value == Some(false), || format!("{name} is UPWS")),
                (6, 3) => {
                    checks.expect(p.is_upws.value == Some(false), || format!("{name} is UPWS"));
                    checks.expect(class.self_dual_member, || format!("{name} has no self-dual member"));
                }
                (5, 2) => checks.expect(p.is_upws.value == Some(true), || format!("{name} is not UPWS")),
                _ => {
                    checks.expect(p.is_cr.is_true(), || format!("{name} is not CR"));
                    checks.expect(!class.self_dual_member, || format!("{name} has a self-dual member"));
                }
            }
            rows.push(json!({
                "parameters": name,
                "systematic_codes": r.total_codes,
                "classes": r.classes.len(),
                "permutation_only_classes": perm_classes,
                "orbit_size": class.orbit_size,
                "self_dual_member": class.self_dual_member,
                "representative": CodeJson::new(&class.representative).generator,
                "profile": profile_json(&class.analysis),
            }));
        }
        reports.insert((n, k), r);
    }
    for (a, b) in [((6, 4), (6, 2)), ((6, 3), (6, 3)), ((5, 3), (5, 2)), ((4, 2), (4, 2))] {
        let ok = dual_bijection(&reports[&a], &reports[&b])?;
        checks.expect(ok, || format!("duality does not match classes of {a:?} and {b:?}"));
    }
    let self_dual = cons::self_dual_search(&f, 6, 3, 4)?;
    checks.expect(!self_dual.is_empty(), || "no self-dual [6,3,4]_5 code found by search".into());
    let code_423 = cons::named_matrix("code_4_2_3_5")?;
    checks.expect(!code_423.is_self_dual(), || "the [4,2,3]_5 matrix code is self-dual".into());
    let named = [(cons::hamming(&f)?, (6, 4)), (cons::named_matrix("rs_5_2_4_5")?, (5, 2)), (code_423, (4, 2))];
    for (c, key) in &named {
        let canon = canonical_form(&f, c.generator(), Equivalence::Monomial)?;
        let rep = reports[key].classes.first().map(|cl| cl.representative.generator().clone());
        checks.expect(rep.as_ref() == Some(&canon), || format!("{key:?}: named code outside the class"));
    }
    Ok(checks.finish(json!({
        "equivalence": "monomial",
        "rows": rows,
        "self_dual_6_3_4": self_dual.first().map(CodeJson::new).map(|c| c.generator),
        "self_dual_6_3_4_count": self_dual.len(),
    })))
}

fn c16(_: &Context) -> Result<Outcome, Error> {
    let f = field(5)?;
    let mut counts = Vec::new();
    for k in 2..=5 {
        counts.push(json!({ "k": k, "systematic_codes": enumerate_mds_systematic(&f, 7, k)?.len() }));
    }
    let none = verify_no_mds(&f, 7)?;
    let mut checks = Checks::default();
    checks.expect(none, || "an MDS [7,k]_5 code exists".into());
    Ok(checks.finish(json!({ "searches": counts })))
}

fn c17(ctx: &Context) -> Result<Outcome, Error> {
    let mut checks = Checks::default();
    let mut rows = Vec::new();
    for q in [3u32, 4, 5, 8] {
        let c = cons::hamming(&field(q)?)?;
        let sp = spectra(&c, ctx.caps.enumeration)?;
        let s = sp.dual.num_nonzero_weights();
        let d = sp.primal.min_distance().unwrap_or(0);
        checks.expect(s == 1 && d == 3, || format!("q = {q}: s = {s}, d = {d}"));
        rows.push(json!({ "code": label(&c, d), "s": s, "dual_weights": sp.dual.nonzero_weights() }));
    }
    Ok(checks.finish(json!({ "codes": rows })))
}

fn c18(ctx: &Context) -> Result<Outcome, Error> {
    let mut checks = Checks::default();
    let mut codes: Vec<(&str, LinearCode)> = Vec::new();
    for q in [2u32, 3, 4, 5, 7, 8] {
        let f = field(q)?;
        for n in 3..=6 {
            codes.push(("dual repetition", cons::dual_repetition(&f, n)?));
        }
        codes.push(("Hamming", cons::hamming(&f)?));
    }
    for n in 2..=8 {
        codes.push(("binary repetition", cons::repetition(&field(2)?, n)?));
    }
    codes.push(("dual hyperoval", cons::repetition(&field(2)?, 4)?));
    codes.push(("dual hyperoval", cons::hyperoval_code(&field(4)?)?.dual()));
    codes.push(("dual hyperoval", cons::hyperoval_code(&field(8)?)?.dual()));
    codes.push(("doubly extended RS", cons::doubly_extended_rs(&field(4)?, 2)?));
    codes.push(("doubly extended RS", cons::doubly_extended_rs(&field(8)?, 6)?));
    codes.push(("sporadic", cons::reed_solomon(&field(4)?, 4, 2)?));
    codes.push(("sporadic", cons::named_matrix("rs_5_2_4_5")?.dual()));
    codes.push(("sporadic", cons::named_matrix("code_4_2_3_5")?));
    let mut rows = Vec::new();
    for (family, c) in &codes {
        let a = analyze(c, &ctx.options())?;
        let p = &a.profile;
        let name = label(c, p.d);
        checks.expect(p.is_cr.is_true() && p.is_mds.is_true(), || {
            format!("{family} {name}: CR = {:?}, MDS = {:?}", p.is_cr.value, p.is_mds.value)
        });
        rows.push(
            json!({ "family": family, "code": name, "cr": p.is_cr.value, "provenance": p.is_cr.provenance.name() }),
        );
    }
    Ok(checks.finish(json!({ "codes": rows })))
}
