use std::time::Instant;

use num_traits::ToPrimitive;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use rootdatum::acceptance::{run_all_with, AcceptanceOptions, DEFAULT_SEED};
use rootdatum::json_util;
use rootdatum::lattice::{parse_rational, IntMatrix, RationalVector};
use rootdatum::lgroup_cgroup::{
    build_g_tilde, c_group_agreement, c_group_via_quotient, enumerate_twisting_elements, verify_chi_maps_to_2theta,
};
use rootdatum::root_datum::{
    based_isomorphism_with, standard, weyl_group, BasedRootDatum, GaloisActionData, GroupDatum, GroupName, LGroupData,
};
use rootdatum::satake::{
    classify_gl2_family, defined_over_equivalence_gln, hecke_eigenvalues_gl2, integral_exponent_test, rational_rows,
    satake_charpoly_gl2, trivial_representation, unramified_twist_gl, FamilyKind, GL2FamilySpec, SatakeParamGL,
};
use rootdatum::unitary_cht::{unitary_check, CoefficientField};
use rootdatum::Error;

use crate::group_spec::{catalog_label, resolve, ResolvedGroup};
use crate::{CliError, Command, FamilyArgs, Outcome};

pub fn dispatch(cmd: Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Describe(g) => describe(&resolve(&g.group)?).map(Outcome::ok),
        Command::Dual(g) => dual(&resolve(&g.group)?).map(Outcome::ok),
        Command::Cgroup(g) => cgroup(&resolve(&g.group)?).map(Outcome::ok),
        Command::Twisting { group, bound } => twisting(&resolve(&group.group)?, bound).map(Outcome::ok),
        Command::Gtilde(g) => gtilde(&resolve(&g.group)?).map(Outcome::ok),
        Command::Classify(f) => classify(&family_spec(&f)?).map(Outcome::ok),
        Command::Satake { family, trivial, prime, twist } => satake(&family, trivial, prime, twist.as_deref()),
        Command::UnitaryCheck { n, field, samples, seed } => unitary(n, &field, samples, seed),
        Command::VerifyAll { seed, mutate_delta } => verify_all(seed, mutate_delta),
    }
}

fn to_value<T: Serialize>(x: &T) -> Result<Value, CliError> {
    serde_json::to_value(x).map_err(|e| CliError::from(Error::Parse(e.to_string())))
}

fn small_rows(m: &IntMatrix) -> Result<Vec<Vec<i64>>, CliError> {
    m.row_vecs()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().ok_or_else(|| CliError::from(Error::Parse(format!("entry {x} too large")))))
                .collect()
        })
        .collect()
}

/// Output of `describe`. Parsing it back yields the same value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescribeReport {
    pub group: String,
    pub datum: GroupDatum,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub semisimple_rank: usize,
    /// Indices into `datum.roots`.
    pub positive_roots: Vec<usize>,
    pub half_sum_positive_roots: RationalVector,
    /// Absent when the Weyl group is too large to enumerate.
    pub weyl_group_order: Option<usize>,
    pub twisting_element_exists: bool,
}

impl DescribeReport {
    pub fn build(label: &str, group: &GroupDatum) -> Result<Self, CliError> {
        let rd = &group.datum;
        let weyl_group_order = match weyl_group(rd) {
            Ok(w) => Some(w.len()),
            Err(Error::RankGuard(_)) => None,
            Err(e) => return Err(e.into()),
        };
        Ok(DescribeReport {
            group: label.to_string(),
            datum: group.clone(),
            cartan_matrix: small_rows(&rd.cartan_matrix())?,
            semisimple_rank: rd.semisimple_rank(),
            positive_roots: rd.positive_roots()?,
            half_sum_positive_roots: rd.half_sum_positive_roots()?,
            weyl_group_order,
            twisting_element_exists: enumerate_twisting_elements(rd, &group.galois, 0)?.exists,
        })
    }
}

fn describe(g: &ResolvedGroup) -> Result<Value, CliError> {
    to_value(&DescribeReport::build(&g.label, &g.group)?)
}

fn lgroup_json(l: &LGroupData) -> Result<Value, CliError> {
    Ok(GroupDatum { datum: l.dual_datum.clone(), galois: l.galois.clone() }.to_json_value()?)
}

fn dual(g: &ResolvedGroup) -> Result<Value, CliError> {
    let l = LGroupData::of(&g.group.datum, &g.group.galois)?;
    Ok(json!({ "group": g.label, "dual": lgroup_json(&l)? }))
}

const CATALOG: [GroupName; 6] =
    [GroupName::Torus, GroupName::GL, GroupName::SL, GroupName::PGL, GroupName::Sp, GroupName::UnitaryQuasiSplit];

/// Catalog entries, and catalog entries times `GL(1)`, of the given rank.
fn catalog_candidates(rank: usize) -> Vec<(String, BasedRootDatum, GaloisActionData)> {
    let mut out = Vec::new();
    for name in CATALOG {
        for n in 1..=rank + 1 {
            let Ok((rd, galois)) = standard(name, n) else { continue };
            if rd.rank() == rank {
                out.push((catalog_label(name, n), rd.clone(), galois.clone()));
            }
            if rd.rank() + 1 == rank && galois.is_trivial() {
                let label = format!("{}xGL(1)", catalog_label(name, n));
                out.push((label, rd.product(&BasedRootDatum::torus(1)), GaloisActionData::trivial(rank)));
            }
        }
    }
    out
}

/// Based isomorphisms intertwining the Galois actions, to every catalog
/// candidate of the same rank.
fn catalog_matches(l: &LGroupData) -> Result<Vec<Value>, CliError> {
    let mut out = Vec::new();
    for (label, rd, galois) in catalog_candidates(l.dual_datum.rank()) {
        if galois.order() != l.galois.order() {
            continue;
        }
        let found = based_isomorphism_with(&l.dual_datum, &rd, |phi| {
            l.galois.matrices().iter().zip(galois.matrices()).all(|(a, b)| phi * a == b * phi)
        });
        match found {
            Ok(Some(w)) => out.push(json!({ "target": label, "witness": json_util::matrix(&w) })),
            Ok(None) | Err(Error::RankGuard(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

fn cgroup(g: &ResolvedGroup) -> Result<Value, CliError> {
    let (rd, galois) = (&g.group.datum, &g.group.galois);
    let quotient = c_group_via_quotient(rd, galois)?;
    let agreement = c_group_agreement(rd, galois)?;
    Ok(json!({
        "group": g.label,
        "c_group": lgroup_json(&quotient)?,
        "agreement": {
            "agree": agreement.agree,
            "witness": agreement.witness.as_ref().map(json_util::matrix),
        },
        "isomorphic_to": catalog_matches(&quotient)?,
    }))
}

fn twisting(g: &ResolvedGroup, bound: i64) -> Result<Value, CliError> {
    let search = enumerate_twisting_elements(&g.group.datum, &g.group.galois, bound)?;
    let elements: Vec<Value> = search.elements.iter().map(|v| json_util::int_vec(v)).collect();
    Ok(json!({ "group": g.label, "box": bound, "existence": search.exists, "elements": elements }))
}

fn gtilde(g: &ResolvedGroup) -> Result<Value, CliError> {
    let pkg = build_g_tilde(&g.group.datum, &g.group.galois)?;
    Ok(json!({
        "group": g.label,
        "extension": pkg.to_json_value()?,
        "chi_maps_to_2theta": verify_chi_maps_to_2theta(&pkg)?,
    }))
}

fn parse_kind(s: &str) -> Result<FamilyKind, CliError> {
    match s.to_ascii_lowercase().as_str() {
        "holomorphic" => Ok(FamilyKind::Holomorphic),
        "maass" | "maass_langlands_tunnell" => Ok(FamilyKind::MaassLanglandsTunnell),
        _ => Err(CliError::input(format!("unknown family kind {s:?}"))),
    }
}

fn parse_hecke(s: &str) -> Result<(u64, num_rational::BigRational), CliError> {
    let (p, a) = s.split_once(':').ok_or_else(|| CliError::input(format!("expected p:a_p, got {s:?}")))?;
    let p = p.trim().parse().map_err(|_| CliError::input(format!("bad prime in {s:?}")))?;
    Ok((p, parse_rational(a)?))
}

pub fn family_spec(f: &FamilyArgs) -> Result<GL2FamilySpec, CliError> {
    if let Some(path) = &f.spec {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{path}: {e}")))?;
        return serde_json::from_str(&text).map_err(|e| CliError::input(format!("{path}: {e}")));
    }
    let kind = parse_kind(f.kind.as_deref().ok_or_else(|| CliError::input("--kind or --spec is required".into()))?)?;
    let s = parse_rational(f.s.as_deref().unwrap_or("0"))?;
    let hecke = f.hecke.iter().map(|h| parse_hecke(h)).collect::<Result<Vec<_>, _>>()?;
    Ok(GL2FamilySpec::new(kind, f.k, s, hecke)?)
}

fn classify(spec: &GL2FamilySpec) -> Result<Value, CliError> {
    let c = classify_gl2_family(spec)?;
    let mut out = json!({
        "family": to_value(spec)?,
        "infinitesimal_parameter": to_value(&spec.infinitesimal_parameter())?,
        "L_algebraic": c.l_algebraic,
        "C_algebraic": c.c_algebraic,
        "L_arithmetic": c.l_arithmetic,
        "C_arithmetic": c.c_arithmetic,
    });
    if let Some(note) = c.note {
        out["note"] = Value::from(note);
    }
    Ok(out)
}

fn satake(family: &FamilyArgs, trivial: Option<usize>, p: u64, twist: Option<&str>) -> Result<Outcome, CliError> {
    let mut out = json!({ "prime": p });
    let base = match trivial {
        Some(n) => {
            out["source"] = json!({ "trivial": n });
            trivial_representation(n, p)?
        }
        None => {
            let spec = family_spec(family)?;
            out["source"] = to_value(&spec)?;
            if spec.kind() == FamilyKind::Holomorphic {
                let (t, s) = hecke_eigenvalues_gl2(&spec, p)?;
                out["hecke_eigenvalues"] = json!({ "T_p": to_value(&t)?, "S_p": to_value(&s)? });
            }
            satake_charpoly_gl2(&spec, p)?
        }
    };
    let param = match twist {
        Some(t) => {
            let t = parse_rational(t)?;
            out["twist"] = json_util::rational(&t);
            let det = rootdatum::lattice::int_vec(&vec![1; base.n()]);
            unramified_twist_gl(&base, &det, &t, p)?
        }
        None => {
            out["twist"] = Value::Null;
            base
        }
    };
    let arithmetic = param.inverse_class()?;
    let trace = param.coeff_of_degree(param.n() - 1).neg();
    let over_q = defined_over_equivalence_gln(&arithmetic);
    out["n"] = Value::from(param.n());
    out["charpoly"] = charpoly_json(&param)?;
    out["arithmetic_charpoly"] = charpoly_json(&arithmetic)?;
    out["trace"] = json!({ "value": to_value(&trace)?, "display": trace.to_string() });
    out["integral_exponent"] = Value::from(integral_exponent_test(std::slice::from_ref(&trace)));
    out["defined_over_q"] = json!({
        "coeffs_in_field": over_q.coeffs_in_field,
        "companion": over_q.companion.as_deref().map(rational_rows),
    });
    Ok(Outcome::ok(out))
}

fn charpoly_json(p: &SatakeParamGL) -> Result<Value, CliError> {
    Ok(json!({ "param": to_value(p)?, "display": p.to_string() }))
}

fn seed_or_env(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        std::env::var("ROOTDATUM_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
    })
}

fn unitary(n: usize, field: &str, samples: usize, seed: Option<u64>) -> Result<Outcome, CliError> {
    let field: CoefficientField = field.parse()?;
    let seed = seed_or_env(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = unitary_check(n, field, samples, &mut rng)?;
    let ok = report.all_pass();
    let mut value = to_value(&report)?;
    value["seed"] = Value::from(seed);
    value["passed"] = Value::from(ok);
    Ok(Outcome { value, ok })
}

fn verify_all(seed: Option<u64>, mutate_delta: bool) -> Result<Outcome, CliError> {
    let opts = AcceptanceOptions { seed: seed_or_env(seed), mutate_delta };
    let start = Instant::now();
    let mut last = start;
    let report = run_all_with(&opts, |o| {
        let now = Instant::now();
        let status = if o.passed { "PASS" } else { "FAIL" };
        eprintln!("[{status}] criterion {:>2}: {} ({:.2?})", o.id, o.name, now - last);
        last = now;
    });
    eprintln!("total {:.2?}", start.elapsed());
    Ok(Outcome { value: to_value(&report)?, ok: report.passed })
}
