//! End-to-end descent analysis runs and their JSON / text reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::descent::{
    classify_case, invariant_generator_roots, is_descendable, orbit_structure, CaseTag, OrbitStructure,
    StableGenerator,
};
use crate::error::{Error, Result};
use crate::field::{Field, DEFAULT_SIZE_CAP};
use crate::group::{divisors, group_g_bruteforce, group_g_formula, subfield, subfield_bruteforce, GroupG};
use crate::linearized::subgroup_polynomial;
use crate::poly::{format_poly, FpPoly};
use crate::subgroup::{all_subspaces, order_p_subgroups, AdditiveSubgroup, DEFAULT_ENUM_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModulusChoice {
    Auto,
    Explicit(Vec<i64>),
}

impl Serialize for ModulusChoice {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ModulusChoice::Auto => serializer.serialize_str("auto"),
            ModulusChoice::Explicit(c) => c.serialize(serializer),
        }
    }
}

impl FromStr for ModulusChoice {
    type Err = Error;

    /// `auto` or comma-separated ascending coefficients, e.g. `3,1,0,1,1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("auto") {
            return Ok(ModulusChoice::Auto);
        }
        s.split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::InvalidInput(format!("modulus coefficient {c:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(ModulusChoice::Explicit)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::InvalidInput(format!("unknown format {s:?}"))),
        }
    }
}

/// Parameters of one analysis run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub p: u64,
    pub s: u32,
    #[serde(rename = "t")]
    pub ts: Vec<u32>,
    pub modulus: ModulusChoice,
    pub format: Format,
    pub oracle: bool,
    pub subspace_dims: Vec<u32>,
    #[serde(skip)]
    pub size_cap: u64,
    #[serde(skip)]
    pub enum_cap: u64,
}

impl RunConfig {
    pub fn new(p: u64, s: u32) -> Self {
        RunConfig {
            p,
            s,
            ts: vec![1],
            modulus: ModulusChoice::Auto,
            format: Format::Json,
            oracle: false,
            subspace_dims: vec![1],
            size_cap: DEFAULT_SIZE_CAP,
            enum_cap: DEFAULT_ENUM_CAP,
        }
    }

    pub fn with_ts(mut self, ts: impl Into<Vec<u32>>) -> Self {
        self.ts = ts.into();
        self
    }

    pub fn with_modulus(mut self, modulus: &[i64]) -> Self {
        self.modulus = ModulusChoice::Explicit(modulus.to_vec());
        self
    }

    pub fn with_oracle(mut self, oracle: bool) -> Self {
        self.oracle = oracle;
        self
    }

    pub fn with_dims(mut self, dims: impl Into<Vec<u32>>) -> Self {
        self.subspace_dims = dims.into();
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldSummary {
    pub p: u64,
    pub n: u32,
    pub modulus: Vec<u64>,
    pub beta_order: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupRecord {
    pub gen_exp: Option<u64>,
    pub dim: usize,
    pub exps: Vec<u64>,
    pub verdicts: BTreeMap<u32, bool>,
    /// Linearized polynomial: degree p^i -> coefficient vector over F_p.
    pub poly: BTreeMap<u64, Vec<u64>>,
}

/// The outcome of [`run`]; its JSON form is the CLI's stable output.
#[derive(Clone, Debug, Serialize)]
pub struct DescentReport {
    pub config: RunConfig,
    pub field: FieldSummary,
    pub case: &'static str,
    pub wilson_roots: Vec<u64>,
    #[serde(rename = "G_built_by")]
    pub g_built_by: String,
    #[serde(rename = "G_exponents")]
    pub g_exponents: Vec<u64>,
    pub subgroups: Vec<SubgroupRecord>,
    pub orbits: BTreeMap<u32, OrbitStructure>,
    /// Nonzero exponents of F_{p^t} ∩ G for each requested t.
    #[serde(rename = "kt_meets_G")]
    pub kt_meets_g: BTreeMap<u32, Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_generators: Option<[StableGenerator; 2]>,
    pub oracle_ok: Option<bool>,
}

impl DescentReport {
    /// Exponent sets of the subgroups of dimension `dim` that are stable at `t`.
    pub fn stable_sets(&self, t: u32, dim: usize) -> Vec<Vec<u64>> {
        self.subgroups
            .iter()
            .filter(|r| r.dim == dim && r.verdicts.get(&t) == Some(&true))
            .map(|r| r.exps.clone())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Appendix-style rendering with β-exponent sets in braces.
    pub fn to_text(&self) -> String {
        let f = &self.field;
        let mut out = String::new();
        let set = |exps: &[u64]| {
            let mut s = String::from("{0");
            for e in exps {
                let _ = write!(s, ", β^{e}");
            }
            s.push('}');
            s
        };
        let _ = writeln!(
            out,
            "field F_{}^{} = F_{}[x]/({}), β of order {}",
            f.p,
            f.n,
            f.p,
            format_poly(&f.modulus, "x"),
            f.beta_order
        );
        let _ = write!(out, "case {}", self.case);
        if !self.wilson_roots.is_empty() {
            let roots: Vec<String> = self.wilson_roots.iter().map(u64::to_string).collect();
            let _ = write!(out, "; square roots of -1: {{{}}}", roots.join(", "));
        }
        out.push('\n');
        let _ = writeln!(out, "G = {} ({})", set(&self.g_exponents), self.g_built_by);
        let _ = writeln!(out, "subgroups: {}", self.subgroups.len());
        for (t, orbit) in &self.orbits {
            let q = f.p.pow(*t);
            let _ = writeln!(out, "t = {t}:");
            let _ = writeln!(out, "  stable (descends to F_{q}): {}", orbit.fixed.len());
            for &i in &orbit.fixed {
                let _ = writeln!(out, "    {}", set(&self.subgroups[i].exps));
            }
            let _ = writeln!(out, "  swapped pairs: {}", orbit.pairs.len());
            for &(i, j) in &orbit.pairs {
                let _ = writeln!(
                    out,
                    "    {} <-> {}",
                    set(&self.subgroups[i].exps),
                    set(&self.subgroups[j].exps)
                );
            }
            if orbit.has_longer_cycles() {
                let _ = writeln!(out, "  longer cycles: {:?}", orbit.longer_cycles);
            }
            if let Some(meet) = self.kt_meets_g.get(t) {
                let _ = writeln!(out, "  F_{q} ∩ G = {}", set(meet));
            }
        }
        if let Some(gens) = &self.invariant_generators {
            let parts: Vec<String> = gens
                .iter()
                .map(|g| format!("β^{} (φ_1 acts as {})", g.exp, g.root))
                .collect();
            let _ = writeln!(out, "invariant generators: {}", parts.join(", "));
        }
        let _ = writeln!(
            out,
            "oracle: {}",
            match self.oracle_ok {
                Some(true) => "ok",
                Some(false) => "FAILED",
                None => "not run",
            }
        );
        out
    }

    pub fn render(&self) -> String {
        match self.config.format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

/// The lexicographically smallest primitive monic polynomial of degree `n`
/// over F_p, comparing coefficients from the constant term upward.
/// Returned in ascending order, leading 1 included.
pub fn search_primitive_polynomial(p: u64, n: u32, cap: u64) -> Result<Vec<u64>> {
    if !crate::poly::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let total = match p.checked_pow(n) {
        Some(q) if q <= cap.min(u32::MAX as u64) && n > 0 => q,
        _ => return Err(Error::SizeCapExceeded { p, n, cap }),
    };
    for k in 0..total {
        let mut coeffs: Vec<u64> = (0..n).map(|i| k / p.pow(n - 1 - i) % p).collect();
        coeffs.push(1);
        if FpPoly::new(p, coeffs.iter().copied()).is_primitive() {
            return Ok(coeffs);
        }
    }
    Err(Error::InvalidInput(format!("no primitive polynomial of degree {n} over F_{p}")))
}

fn oracle_check(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::OracleMismatch(what()))
    }
}

/// Runs the full analysis: field, G, subgroup inventory, verdicts and orbits
/// for every requested t.
pub fn run(config: &RunConfig) -> Result<DescentReport> {
    let RunConfig { p, s, .. } = *config;
    if s == 0 {
        return Err(Error::InvalidInput("s must be at least 1".into()));
    }
    let n = 2 * s;
    let mut ts = config.ts.clone();
    ts.sort_unstable();
    ts.dedup();
    if let Some(&t) = ts.iter().find(|&&t| t == 0 || n % t != 0) {
        return Err(Error::NotADivisor { t, n });
    }
    let mut dims = config.subspace_dims.clone();
    dims.sort_unstable();
    dims.dedup();
    if let Some(&d) = dims.iter().find(|&&d| d > s) {
        return Err(Error::InvalidDimension { d, s });
    }

    let modulus: Vec<i64> = match &config.modulus {
        ModulusChoice::Explicit(c) => c.clone(),
        ModulusChoice::Auto => search_primitive_polynomial(p, n, config.size_cap)?
            .into_iter()
            .map(|c| c as i64)
            .collect(),
    };
    let field = Arc::new(Field::with_cap(p, n, &modulus, config.size_cap)?);
    let case = classify_case(p);

    let group: GroupG = if p == 2 {
        group_g_bruteforce(&field, s)?
    } else {
        let g = group_g_formula(&field, s)?;
        if config.oracle {
            let scan = group_g_bruteforce(&field, s)?;
            oracle_check(scan.subgroup() == g.subgroup(), || {
                "closed-form G differs from brute-force G".into()
            })?;
        }
        g
    };

    if config.oracle {
        for t in divisors(n) {
            oracle_check(subfield(&field, t)? == subfield_bruteforce(&field, t)?, || {
                format!("exponent formula for F_{p}^{t} differs from the fixed-point scan")
            })?;
        }
    }

    let mut inventory: Vec<AdditiveSubgroup> = Vec::new();
    for &d in &dims {
        if d == 1 {
            let lines = order_p_subgroups(&group);
            if config.oracle {
                let enumerated = all_subspaces(&group, 1, config.enum_cap)?;
                oracle_check(enumerated == lines, || {
                    "order-p subgroups differ from the dimension-1 subspace enumeration".into()
                })?;
            }
            inventory.extend(lines);
        } else {
            inventory.extend(all_subspaces(&group, d, config.enum_cap)?);
        }
    }

    let mut records = Vec::with_capacity(inventory.len());
    for h in &inventory {
        let mut verdicts = BTreeMap::new();
        for &t in &ts {
            verdicts.insert(t, is_descendable(h, t)?.stable);
        }
        let poly = subgroup_polynomial(h)
            .terms()
            .into_iter()
            .map(|(deg, c)| (deg, field.coeffs_of(c)))
            .collect();
        records.push(SubgroupRecord {
            gen_exp: h.exponents().first().copied(),
            dim: h.dim(),
            exps: h.exponents().to_vec(),
            verdicts,
            poly,
        });
    }

    let mut orbits = BTreeMap::new();
    let mut kt_meets_g = BTreeMap::new();
    for &t in &ts {
        let orbit = orbit_structure(&inventory, t)?;
        for (i, r) in records.iter().enumerate() {
            oracle_check(orbit.fixed.contains(&i) == r.verdicts[&t], || {
                format!("subgroup {i}: orbit membership disagrees with its verdict at t = {t}")
            })?;
        }
        orbits.insert(t, orbit);

        let meet = subfield_bruteforce(&field, t)?.intersect(&group)?;
        if config.oracle && p != 2 && s % t == 0 {
            oracle_check(meet.is_trivial(), || format!("F_{p}^{t} ∩ G is not trivial"))?;
        }
        kt_meets_g.insert(t, meet.exponents().to_vec());
    }

    let invariant_generators = match case {
        CaseTag::OneModFour { .. } if s == 2 => {
            let gens = invariant_generator_roots(&field)?;
            if config.oracle {
                let stable_lines: Vec<&SubgroupRecord> = records
                    .iter()
                    .filter(|r| r.dim == 1 && r.verdicts.get(&1) == Some(&true))
                    .collect();
                if dims.contains(&1) && ts.contains(&1) {
                    for g in &gens {
                        oracle_check(
                            stable_lines.iter().any(|r| r.exps.binary_search(&g.exp).is_ok()),
                            || format!("β^{} does not lie in a stable line", g.exp),
                        )?;
                    }
                }
                let mut roots = vec![gens[0].root, gens[1].root];
                roots.sort_unstable();
                let mut expected = case.sqrt_minus_one_pair(p);
                expected.sort_unstable();
                oracle_check(roots == expected, || {
                    "invariant generators do not realize both square roots of -1".into()
                })?;
            }
            Some(gens)
        }
        _ => None,
    };

    Ok(DescentReport {
        config: config.clone(),
        field: FieldSummary {
            p,
            n,
            modulus: field.spec().modulus.clone(),
            beta_order: field.beta_order(),
        },
        case: case.name(),
        wilson_roots: case.sqrt_minus_one_pair(p),
        g_built_by: group.built_by().to_string(),
        g_exponents: group.exponents().to_vec(),
        subgroups: records,
        orbits,
        kt_meets_g,
        invariant_generators,
        oracle_ok: config.oracle.then_some(true),
    })
}

/// A fixed configuration with its expected pair of stable exponent sets,
/// listed in the original (unsorted) order.
#[derive(Clone, Copy, Debug)]
pub struct GoldenCase {
    pub p: u64,
    pub modulus: [i64; 5],
    pub roots: [u64; 2],
    pub stable_sets: [&'static [u64]; 2],
}

pub const APPENDIX_CASES: [GoldenCase; 3] = [
    GoldenCase {
        p: 5,
        modulus: [3, 1, 0, 1, 1],
        roots: [2, 3],
        stable_sets: [&[585, 429, 117, 273], &[39, 507, 195, 351]],
    },
    GoldenCase {
        p: 13,
        modulus: [2, 1, 0, 1, 1],
        roots: [5, 8],
        stable_sets: [
            &[
                4165, 6545, 13685, 8925, 25585, 16065, 1785, 11305, 23205, 27965, 20825, 18445,
            ],
            &[
                5355, 7735, 14875, 10115, 26775, 17255, 2975, 12495, 24395, 595, 22015, 19635,
            ],
        ],
    },
    GoldenCase {
        p: 17,
        modulus: [5, 0, 0, 1, 1],
        roots: [4, 13],
        stable_sets: [
            &[
                22185, 53505, 6525, 1305, 27405, 37845, 16965, 32625, 74385, 58725, 79605, 69165,
                43065, 48285, 11745, 63945,
            ],
            &[
                19575, 50895, 3915, 82215, 24795, 35235, 14355, 30015, 71775, 56115, 76995, 66555,
                40455, 45675, 9135, 61335,
            ],
        ],
    },
];

impl GoldenCase {
    pub fn config(&self) -> RunConfig {
        RunConfig::new(self.p, 2)
            .with_ts([1])
            .with_modulus(&self.modulus)
            .with_oracle(true)
    }

    /// Compares a report's stable order-p subgroups and square roots of -1
    /// against this case, as sets.
    pub fn check(&self, report: &DescentReport) -> Result<()> {
        let mut golden: Vec<Vec<u64>> = self
            .stable_sets
            .iter()
            .map(|s| {
                let mut v = s.to_vec();
                v.sort_unstable();
                v
            })
            .collect();
        golden.sort();
        let mut got = report.stable_sets(1, 1);
        got.sort();

        let mut roots = report.wilson_roots.clone();
        roots.sort_unstable();
        if got == golden && roots == self.roots {
            return Ok(());
        }
        let flat = |sets: &[Vec<u64>]| -> Vec<u64> {
            let mut v: Vec<u64> = sets.iter().flatten().copied().collect();
            v.sort_unstable();
            v
        };
        let (want, have) = (flat(&golden), flat(&got));
        let mut missing: Vec<u64> = want.iter().copied().filter(|e| !have.contains(e)).collect();
        let mut unexpected: Vec<u64> = have.iter().copied().filter(|e| !want.contains(e)).collect();
        if roots != self.roots {
            missing.extend(self.roots.iter().filter(|r| !roots.contains(r)));
            unexpected.extend(roots.iter().filter(|r| !self.roots.contains(r)));
        }
        Err(Error::GoldenMismatch {
            p: self.p,
            missing,
            unexpected,
        })
    }
}

/// Runs every appendix configuration and checks it against its golden sets.
pub fn appendix_mode() -> Result<Vec<DescentReport>> {
    APPENDIX_CASES
        .iter()
        .map(|case| {
            let report = run(&case.config())?;
            case.check(&report)?;
            Ok(report)
        })
        .collect()
}
