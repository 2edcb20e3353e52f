//! Acceptance criteria. Each test prints one PASS/FAIL line; run with
//! `cargo test -p as-descent --test acceptance -- --nocapture` to see them.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use as_descent::descent::{
    classify_case, frobenius_eigenvalue, frobenius_subgroup, invariant_subgroup_generators, orbit_structure,
};
use as_descent::group::{divisors, group_g_bruteforce, group_g_formula, kt_intersect_g, subfield, subfield_bruteforce};
use as_descent::linearized::subgroup_polynomial;
use as_descent::report::{run, search_primitive_polynomial, RunConfig, APPENDIX_CASES};
use as_descent::subgroup::{all_subspaces, gaussian_binomial, order_p_subgroups, DEFAULT_ENUM_CAP};
use as_descent::{FFElem, Field};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn criterion(id: &str, title: &str, limit: Option<Duration>, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let mut outcome = body();
    let elapsed = start.elapsed();
    if let (Ok(()), Some(limit)) = (&outcome, limit) {
        if elapsed >= limit {
            outcome = Err(format!("took {elapsed:?}, limit {limit:?}"));
        }
    }
    match &outcome {
        Ok(()) => println!("[PASS] {id} {title} ({elapsed:.2?})"),
        Err(why) => println!("[FAIL] {id} {title}: {why}"),
    }
    assert!(outcome.is_ok(), "{id} failed: {:?}", outcome.err());
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sorted(v: &[u64]) -> Vec<u64> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

fn field(p: u64, n: u32) -> Arc<Field> {
    let m: Vec<i64> = search_primitive_polynomial(p, n, 1 << 24)
        .unwrap()
        .into_iter()
        .map(|c| c as i64)
        .collect();
    Arc::new(Field::new(p, n, &m).unwrap())
}

fn appendix_case(index: usize, limit_secs: u64) {
    let case = APPENDIX_CASES[index];
    let id = format!("AC{}", index + 1);
    let title = format!("appendix reproduction p = {}", case.p);
    criterion(&id, &title, Some(Duration::from_secs(limit_secs)), || {
        let report = run(&case.config()).map_err(|e| e.to_string())?;
        let mut got = report.stable_sets(1, 1);
        got.sort();
        let mut want: Vec<Vec<u64>> = case.stable_sets.iter().map(|s| sorted(s)).collect();
        want.sort();
        ensure(got == want, || format!("stable sets {got:?}, expected {want:?}"))?;
        let roots: BTreeSet<u64> = report.wilson_roots.iter().copied().collect();
        let expected: BTreeSet<u64> = case.roots.into_iter().collect();
        ensure(roots == expected, || format!("roots {roots:?}, expected {expected:?}"))?;
        ensure(report.oracle_ok == Some(true), || "oracle not ok".into())?;
        case.check(&report).map_err(|e| e.to_string())
    });
}

#[test]
fn ac1_appendix_p5() {
    appendix_case(0, 1);
}

#[test]
fn ac2_appendix_p13() {
    appendix_case(1, 5);
}

#[test]
fn ac3_appendix_p17() {
    appendix_case(2, 10);
}

#[test]
fn ac4_char_two() {
    criterion("AC4", "p = 2, s = 2 descent to F_4 and F_2", None, || {
        let report = run(&RunConfig::new(2, 2).with_ts([1, 2]).with_oracle(true)).map_err(|e| e.to_string())?;
        let lines: Vec<&Vec<u64>> = report.subgroups.iter().map(|r| &r.exps).collect();
        ensure(lines.len() == 3, || format!("{} order-2 subgroups", lines.len()))?;
        ensure(report.subgroups.iter().all(|r| r.verdicts[&2]), || "not all stable at t = 2".into())?;
        let stable1: Vec<&Vec<u64>> = report
            .subgroups
            .iter()
            .filter(|r| r.verdicts[&1])
            .map(|r| &r.exps)
            .collect();
        // {0, 1} is the only line whose nonzero element has exponent 0
        ensure(stable1 == vec![&vec![0u64]], || format!("stable at t = 1: {stable1:?}"))?;
        let orbit = &report.orbits[&1];
        ensure(orbit.fixed == vec![0] && orbit.pairs == vec![(1, 2)], || format!("{orbit:?}"))
    });
}

#[test]
fn ac5_three_mod_four_exhaustive() {
    criterion("AC5", "p = 3 mod 4: no stable lines, (p+1)/2 swaps", Some(Duration::from_secs(30)), || {
        for p in [3u64, 7, 11] {
            let f = field(p, 4);
            let g = group_g_bruteforce(&f, 2).map_err(|e| e.to_string())?;
            let lines = order_p_subgroups(&g);
            // exhaustive: test every line elementwise, not only via the orbit code
            let stable = lines.iter().filter(|h| frobenius_subgroup(h, 1) == **h).count();
            let orbit = orbit_structure(&lines, 1).map_err(|e| e.to_string())?;
            ensure(stable == 0 && orbit.fixed.is_empty(), || format!("p = {p}: {stable} stable"))?;
            ensure(orbit.pairs.len() as u64 == (p + 1) / 2 && orbit.longer_cycles.is_empty(), || {
                format!("p = {p}: {} pairs", orbit.pairs.len())
            })?;
        }
        Ok(())
    });
}

#[test]
fn ac6_one_mod_four_generators() {
    criterion("AC6", "p = 1 mod 4: two stable lines from explicit generators", None, || {
        for case in APPENDIX_CASES {
            let p = case.p;
            let f = Arc::new(Field::new(p, 4, &case.modulus).map_err(|e| e.to_string())?);
            let g = group_g_bruteforce(&f, 2).map_err(|e| e.to_string())?;
            let lines = order_p_subgroups(&g);
            let stable: Vec<_> = lines.iter().filter(|h| frobenius_subgroup(h, 1) == **h).collect();
            ensure(stable.len() == 2, || format!("p = {p}: {} stable lines", stable.len()))?;

            let (a, b) = invariant_subgroup_generators(&f).map_err(|e| e.to_string())?;
            let e = (p * p + 1) * (p + 1) / 4;
            ensure(f.dlog(a).unwrap() == e && f.dlog(b).unwrap() == 3 * e, || "wrong exponents".into())?;
            let mut roots = Vec::new();
            for x in [a, b] {
                ensure(stable.iter().filter(|h| h.contains(x)).count() == 1, || {
                    format!("p = {p}: β^{} not in a stable line", f.dlog(x).unwrap())
                })?;
                let u = frobenius_eigenvalue(&f, x).ok_or("no eigenvalue")?;
                let lhs = f.pow(x, p as i64).unwrap();
                let rhs = f.mul(f.from_int(u as i64), x).unwrap();
                ensure(lhs == rhs && u * u % p == p - 1, || format!("p = {p}: a^p != u a or u^2 != -1"))?;
                roots.push(u);
            }
            ensure(roots[0] != roots[1], || "both generators share a root".into())?;
            let hit: BTreeSet<usize> = [a, b]
                .iter()
                .map(|&x| stable.iter().position(|h| h.contains(x)).unwrap())
                .collect();
            ensure(hit.len() == 2, || "generators span the same line".into())?;
        }
        Ok(())
    });
}

#[test]
fn ac7_oracle_equivalence() {
    criterion("AC7", "closed forms equal brute force for G and k_t", None, || {
        let mut configs: Vec<(u64, u32)> = Vec::new();
        for p in [3, 5, 7, 13] {
            for s in [1, 2] {
                configs.push((p, s));
            }
        }
        configs.push((3, 3));
        for (p, s) in configs {
            let f = field(p, 2 * s);
            let a = group_g_formula(&f, s).map_err(|e| e.to_string())?;
            let b = group_g_bruteforce(&f, s).map_err(|e| e.to_string())?;
            ensure(a.subgroup() == b.subgroup(), || format!("G differs for p = {p}, s = {s}"))?;
            for t in divisors(2 * s) {
                let k = subfield(&f, t).map_err(|e| e.to_string())?;
                let scan = subfield_bruteforce(&f, t).map_err(|e| e.to_string())?;
                ensure(k == scan, || format!("k_{t} differs for p = {p}, s = {s}"))?;
            }
        }
        Ok(())
    });
}

#[test]
fn ac8_property_suites() {
    criterion("AC8", "field axioms, φ² = -Id, k_t ∩ G, linearity, subspace counts", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

        // field axioms, 10^4 random triples per field
        for (p, n) in [(5, 4), (13, 4), (17, 4), (2, 4), (3, 4), (7, 4), (3, 6)] {
            let f = field(p, n);
            let pick = |rng: &mut ChaCha8Rng| f.from_packed(rng.gen_range(0..f.size() as u32)).unwrap();
            for _ in 0..10_000 {
                let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                let add = |x, y| f.add(x, y).unwrap();
                let mul = |x, y| f.mul(x, y).unwrap();
                let ok = add(add(a, b), c) == add(a, add(b, c))
                    && mul(mul(a, b), c) == mul(a, mul(b, c))
                    && add(a, b) == add(b, a)
                    && mul(a, b) == mul(b, a)
                    && mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
                    && add(a, f.neg(a).unwrap()) == f.zero()
                    && (a.is_zero() || mul(a, f.inv(a).unwrap()) == f.one())
                    && mul(a, b) == f.mul_by_reduction(a, b).unwrap();
                ensure(ok, || format!("axiom failure in F_{p}^{n}"))?;
            }
        }

        // φ_1² = -Id on G for s = 2, every element
        for p in [2u64, 3, 5, 7, 11, 13, 17] {
            let f = field(p, 4);
            let g = group_g_bruteforce(&f, 2).map_err(|e| e.to_string())?;
            for &a in g.elements() {
                let twice = f.frobenius(f.frobenius(a, 1).unwrap(), 1).unwrap();
                ensure(twice == f.neg(a).unwrap(), || format!("φ² != -Id for p = {p}"))?;
            }
        }

        // k_t ∩ G = {0} for odd p and t | s
        for (p, s) in [(3, 1), (3, 2), (5, 1), (5, 2), (7, 2), (11, 2), (13, 2), (3, 3)] {
            let f = field(p, 2 * s);
            for t in divisors(s) {
                let meet = kt_intersect_g(&f, s, t).map_err(|e| e.to_string())?;
                ensure(meet.is_trivial(), || format!("k_{t} ∩ G nontrivial for p = {p}, s = {s}"))?;
            }
        }

        // linearity of subgroup polynomials, 10^3 random pairs per subgroup
        for p in [2u64, 3, 5] {
            let f = field(p, 4);
            let g = group_g_bruteforce(&f, 2).map_err(|e| e.to_string())?;
            let mut subgroups = Vec::new();
            for d in 0..=2 {
                subgroups.extend(all_subspaces(&g, d, DEFAULT_ENUM_CAP).map_err(|e| e.to_string())?);
            }
            for h in &subgroups {
                let lin = subgroup_polynomial(h);
                for _ in 0..1_000 {
                    let a: FFElem = f.from_packed(rng.gen_range(0..f.size() as u32)).unwrap();
                    let b: FFElem = f.from_packed(rng.gen_range(0..f.size() as u32)).unwrap();
                    let ok = lin.eval(f.add(a, b).unwrap()) == f.add(lin.eval(a), lin.eval(b)).unwrap();
                    ensure(ok, || format!("A_H not additive for p = {p}, H = {h}"))?;
                }
            }
        }

        // Gaussian-binomial subspace counts for s = 2, p <= 13
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = field(p, 4);
            let g = group_g_bruteforce(&f, 2).map_err(|e| e.to_string())?;
            for d in 0..=2 {
                let count = all_subspaces(&g, d, DEFAULT_ENUM_CAP).map_err(|e| e.to_string())?.len();
                let expected = gaussian_binomial(2, d, p).unwrap() as usize;
                ensure(count == expected, || format!("p = {p}, d = {d}: {count} != {expected}"))?;
            }
        }

        // case tags agree with the counts above
        ensure(classify_case(13).wilson_root() == Some(5), || "wilson root of 13".into())
    });
}
