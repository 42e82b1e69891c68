//! The ten acceptance criteria, each with its stated time limit.
//!
//! Every test prints one line `ACCEPTANCE <k> PASS|FAIL (<secs> s / <limit> s): <detail>`
//! before asserting, so `cargo test --test acceptance -- --nocapture
//! --test-threads 1` gives a readable summary.

use std::time::{Duration, Instant};

use fatcode::bounds::{
    check_bezout_ci, check_boundscor, check_hombound, random_planar_configurations, random_schemes, Attainment,
    InstanceSpec, StatementId,
};
use fatcode::cli::{run_command, EXIT_COUNTEREXAMPLE};
use fatcode::codes::{crude_bounds, generator_matrix, minimum_distance, minimum_distance_exhaustive};
use fatcode::exactalg::FieldSpec;
use fatcode::geometry::{ci_grid, FatPointScheme};
use fatcode::ideals::{alpha, check_recursion_lemma, largest_recursion_degree, DEFAULT_DEGREE_CAP};
use fatcode::socle::{separator_degrees, socle_profile};

type Outcome = Result<String, String>;

fn criterion(k: u32, limit_secs: u64, body: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs(limit_secs);
    let (verdict, detail) = match (&result, in_time) {
        (Ok(d), true) => ("PASS", d.clone()),
        (Ok(d), false) => ("FAIL", format!("over time limit; {d}")),
        (Err(e), _) => ("FAIL", e.clone()),
    };
    println!(
        "ACCEPTANCE {k} {verdict} ({:.2} s / {limit_secs} s): {detail}",
        elapsed.as_secs_f64()
    );
    assert_eq!(verdict, "PASS", "criterion {k}: {detail}");
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn scheme(field: FieldSpec, points: &[(&[i64], u32)]) -> FatPointScheme {
    FatPointScheme::from_integer_points_over(field, 2, points).unwrap()
}

fn table_scheme(points: &[&[i64]], m: u32) -> FatPointScheme {
    let pts: Vec<(&[i64], u32)> = points.iter().map(|p| (*p, m)).collect();
    FatPointScheme::from_integer_points(2, &pts).unwrap()
}

const X5: [&[i64]; 5] = [&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[1, 3, 1]];
const X4: [&[i64]; 4] = [&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0]];

#[test]
fn criterion_01_gf2_examples() {
    criterion(1, 1, || {
        let f2 = FieldSpec::Prime(2);
        let z1 = scheme(
            f2,
            &[(&[1, 0, 0], 3), (&[0, 1, 0], 2), (&[0, 0, 1], 2), (&[0, 1, 1], 2)],
        );
        let z2 = scheme(
            f2,
            &[(&[0, 1, 1], 2), (&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)],
        );
        let x = z1.support();
        let dx = minimum_distance(&x).map_err(|e| e.to_string())?.d;
        let d1 = minimum_distance(&z1).map_err(|e| e.to_string())?.d;
        let d2 = minimum_distance(&z2).map_err(|e| e.to_string())?.d;
        ensure((dx, d1, d2) == (1, 3, 1), || {
            format!("d(X), d(Z1), d(Z2) = {dx}, {d1}, {d2}")
        })?;
        for z in [&x, &z1, &z2] {
            let g = generator_matrix(z).map_err(|e| e.to_string())?;
            let e = minimum_distance_exhaustive(&g).map_err(|e| e.to_string())?;
            ensure(e == minimum_distance(z).unwrap().d, || {
                format!("oracle disagrees on {z}")
            })?;
        }
        let r1 = crude_bounds(&z1).map_err(|e| e.to_string())?;
        ensure(
            r1.holds
                && r1.values["upper_attained"] == true
                && r1.values["sorted_multiplicities"] == serde_json::json!([3, 2, 2, 2]),
            || format!("Z1 report {r1}"),
        )?;
        let r2 = crude_bounds(&z2).map_err(|e| e.to_string())?;
        ensure(
            r2.holds
                && r2.values["lower_attained"] == true
                && r2.values["sorted_multiplicities"] == serde_json::json!([2, 1, 1, 1]),
            || format!("Z2 report {r2}"),
        )?;
        Ok("d(X)=1, d(Z1)=3 upper attained, d(Z2)=1 lower attained".into())
    });
}

#[test]
fn criterion_02_example00() {
    criterion(2, 1, || {
        let z = FatPointScheme::from_integer_points(
            2,
            &[(&[0, 1, 0], 2), (&[1, 0, 0], 2), (&[1, 1, 0], 1), (&[0, 0, 1], 1)],
        )
        .unwrap();
        let a = alpha(&z, DEFAULT_DEGREE_CAP).map_err(|e| e.to_string())?;
        let d = minimum_distance(&z).map_err(|e| e.to_string())?.d;
        let m = z.max_multiplicity();
        ensure((a, m, d) == (3, 2, 1), || format!("alpha, m, d = {a}, {m}, {d}"))?;
        let r = check_hombound(&z).map_err(|e| e.to_string())?;
        ensure(r.holds && r.attained == Attainment::Attained, || format!("{r}"))?;
        Ok("alpha=3, m=2, d=1, hombound attained".into())
    });
}

#[test]
fn criterion_03_second_hombound_example() {
    criterion(3, 30, || {
        // P4, P5, P6 on x + y + z = 0; P1, P2, P3 off it and not collinear
        let z = FatPointScheme::from_integer_points(
            2,
            &[
                (&[1, 0, 0], 5),
                (&[0, 1, 0], 5),
                (&[0, 0, 1], 5),
                (&[1, 1, -2], 1),
                (&[2, -1, -1], 1),
                (&[4, -3, -1], 1),
            ],
        )
        .unwrap();
        let x = z.support().coordinate_matrix();
        ensure(x.select_columns(&[3, 4, 5]).rank() == 2, || {
            "P4, P5, P6 not collinear".into()
        })?;
        ensure(x.select_columns(&[0, 1, 2]).rank() == 3, || {
            "P1, P2, P3 collinear".into()
        })?;
        let a = alpha(&z, DEFAULT_DEGREE_CAP).map_err(|e| e.to_string())?;
        ensure(a == 9, || format!("alpha = {a}"))?;
        let r = check_hombound(&z).map_err(|e| e.to_string())?;
        let hom = a as i64 - z.max_multiplicity() as i64;
        let crude_lower = r.values["crude_lower"].as_i64().unwrap();
        ensure(r.holds && hom == 4 && crude_lower == 3, || {
            format!("hombound {hom}, crude {crude_lower}")
        })?;
        Ok(format!("alpha=9, hombound 4 > crude lower 3, d(Z)={}", r.values["d_Z"]))
    });
}

fn socle_table(points: &[&[i64]], expected: &[usize]) -> Outcome {
    let mut got = Vec::new();
    for (i, &want) in expected.iter().enumerate() {
        let z = table_scheme(points, i as u32 + 1);
        let s = socle_profile(&z, 0).map_err(|e| e.to_string())?.min_socle_degree;
        got.push(s);
        ensure(s == want, || format!("m={}: s_2 = {s}, expected {want}", i + 1))?;
    }
    Ok(format!("s_2 for m=1..7: {got:?}"))
}

#[test]
fn criterion_04_attained_table_1() {
    criterion(4, 120, || socle_table(&X5, &[2, 4, 6, 8, 10, 12, 14]));
}

#[test]
fn criterion_05_attained_table_2() {
    criterion(5, 120, || socle_table(&X4, &[1, 3, 5, 6, 8, 10, 11]));
}

#[test]
fn criterion_06_ci_socle_formula() {
    criterion(6, 300, || {
        let mut checked = 0;
        for degrees in [&[2, 2][..], &[2, 3], &[3, 3], &[2, 2, 2]] {
            let n = degrees.len();
            for seed in 0..5u64 {
                let ci = ci_grid(degrees, seed).map_err(|e| e.to_string())?;
                for m in 1..=3u32 {
                    let z = ci.scheme.with_multiplicity(m);
                    let s = socle_profile(&z, seed).map_err(|e| e.to_string())?.min_socle_degree;
                    let formula = m as usize * degrees[0] + degrees[1..].iter().sum::<usize>() - n;
                    ensure(s == formula, || {
                        format!("CI{degrees:?} seed {seed} m {m}: {s} != {formula}")
                    })?;
                    checked += 1;
                }
            }
        }
        Ok(format!(
            "{checked} (type, seed, m) combinations match m*d1 + d2+...+dn - n"
        ))
    });
}

#[test]
fn criterion_07_oracle_equivalence() {
    criterion(7, 60, || {
        let mut rejections = 0;
        let mut compared = 0;
        for (p, seed) in [(2u32, 70u64), (3, 71)] {
            let spec = InstanceSpec {
                field: FieldSpec::Prime(p),
                max_ambient: 3,
                max_points: 7,
                max_mult: 3,
                coord_bound: 0,
                homogeneous: false,
            };
            let sample = random_schemes(&spec, 100, seed).map_err(|e| e.to_string())?;
            rejections += sample.rejections;
            for z in &sample.schemes {
                let d = minimum_distance(z).map_err(|e| e.to_string())?.d;
                let e = minimum_distance_exhaustive(&generator_matrix(z).unwrap()).map_err(|e| e.to_string())?;
                ensure(d == e, || format!("{z} over GF({p}): hyperplane {d} vs codewords {e}"))?;
                compared += 1;
            }
        }
        Ok(format!("{compared} schemes agree ({rejections} draws rejected)"))
    });
}

#[test]
fn criterion_08_property_suite() {
    criterion(8, 600, || {
        let sample = random_schemes(&InstanceSpec::rational(3, 8, 3), 200, 80).map_err(|e| e.to_string())?;
        for (k, z) in sample.schemes.iter().enumerate() {
            let ctx = |what: &str| format!("instance {k} ({z}): {what}");
            let crude = crude_bounds(z).map_err(|e| e.to_string())?;
            ensure(crude.holds, || ctx("crude bounds"))?;

            let x = z.support();
            let dx = minimum_distance(&x).unwrap().d;
            let m = z.max_multiplicity();
            let dm = minimum_distance(&x.with_multiplicity(m)).unwrap().d;
            ensure(dm == m as u64 * dx, || ctx("d(mX) != m d(X)"))?;

            ensure(check_hombound(z).map_err(|e| e.to_string())?.holds, || ctx("hombound"))?;

            let profiles: Vec<_> = (0..5u64)
                .map(|seed| socle_profile(z, seed))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            ensure(
                profiles
                    .windows(2)
                    .all(|w| w[0].degrees_with_socle_dims == w[1].degrees_with_socle_dims),
                || ctx("socle profile depends on the linear form"),
            )?;
            let sn = profiles[0].min_socle_degree;
            let min_sep = *separator_degrees(z).map_err(|e| e.to_string())?.iter().min().unwrap();
            ensure(min_sep >= sn, || ctx(&format!("separator degree {min_sep} < s_n {sn}")))?;

            let snx = socle_profile(&x, 0).map_err(|e| e.to_string())?.min_socle_degree as u64;
            let ax = alpha(&x, DEFAULT_DEGREE_CAP).unwrap() as u64;
            ensure(dx >= snx && snx + 1 >= ax, || {
                ctx(&format!("chain d(X)={dx} >= s_n(X)={snx} >= alpha-1={}", ax - 1))
            })?;
            if x.ambient_dim() >= 2 {
                ensure(check_boundscor(&x).map_err(|e| e.to_string())?.holds, || {
                    ctx("boundscor")
                })?;
            }
        }
        Ok(format!(
            "200 instances, zero violations ({} draws rejected)",
            sample.rejections
        ))
    });
}

#[test]
fn criterion_09_bezout_grids() {
    criterion(9, 300, || {
        let mut checked = 0;
        for degrees in [&[2, 2][..], &[2, 3], &[3, 3], &[2, 4], &[2, 2, 2]] {
            for seed in 0..20u64 {
                let ci = ci_grid(degrees, seed).map_err(|e| e.to_string())?;
                let r = check_bezout_ci(&ci, false).map_err(|e| e.to_string())?;
                let expected = if degrees.len() == 2 {
                    StatementId::N2Theorem
                } else {
                    StatementId::ConjectureCI
                };
                ensure(r.statement == expected, || format!("{:?}", r.statement))?;
                ensure(r.holds && !r.is_counterexample(), || {
                    format!("CI{degrees:?} seed {seed}: {r}")
                })?;
                if degrees == [2, 3] {
                    ensure(r.values["d_X"] == 3 && r.attained == Attainment::Attained, || {
                        format!("CI(2,3) seed {seed}: {r}")
                    })?;
                }
                checked += 1;
            }
        }
        for seed in 0..20u64 {
            let out = run_command([
                "fatcode",
                "check",
                "conjecture",
                "--degrees",
                "2,2,2",
                "--seed",
                &seed.to_string(),
            ]);
            ensure(out.code != EXIT_COUNTEREXAMPLE && out.code == 0, || {
                format!("CLI exit {} on seed {seed}", out.code)
            })?;
        }
        Ok(format!(
            "{checked} grids satisfy d(X) >= (d1-1)d2...dn; CI(2,3) attains 3; exit 3 never raised"
        ))
    });
}

#[test]
fn criterion_10_recursion_ladder() {
    criterion(10, 120, || {
        let x = table_scheme(&X5, 1);
        let b = largest_recursion_degree(&x, 10)
            .map_err(|e| e.to_string())?
            .ok_or("no b for X5")?;
        let r = check_recursion_lemma(&x, b).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("{r}"))?;
        let sample = random_planar_configurations(7, 20, 100).map_err(|e| e.to_string())?;
        let mut ladders = 0;
        for z in &sample.schemes {
            if let Some(b) = largest_recursion_degree(z, 7).map_err(|e| e.to_string())? {
                let r = check_recursion_lemma(z, b).map_err(|e| e.to_string())?;
                ensure(r.holds, || format!("{r}"))?;
                ladders += 1;
            }
        }
        Ok(format!(
            "X5 ladder with b={b}; {ladders}/20 random 7-point ladders hold"
        ))
    });
}
