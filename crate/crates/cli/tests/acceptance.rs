//! Acceptance criteria AC-01..AC-14. Prints one line per criterion and exits
//! nonzero when any fails.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::f64::consts::TAU;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stasurf::cplane::{chordal, DegeneracyClass, ExtendedComplex, MobiusTransform};
use stasurf::efset::{admissibility_check, ef_solve, EF_TOL};
use stasurf::ratfun::RationalFunction;
use stasurf::valuedist::{neg_curvature_probe, rational_defect_bound, schwarz_check, shared_values, shipped_probe_configs, SchwarzCheckConfig};
use stasurf::verdict::Verdict;
use stasurf::weierstrass::{
    check_periods, fd_diagnostics, gauss_from_phi, induced_metric, lorentz_action, phi_forms, sample_mesh, Domain, PeriodMethod, PhiForms, WeierstrassData,
};
use stasurf_cli::analyze::{analyze, Overrides};
use stasurf_cli::gallery::{self, GalleryEntry};
use stasurf_cli::share::share;
use support::{deflation_multiplicity, ef_bruteforce, rand_blaschke, rand_complex, rand_rational, rand_rational_deg, same_point_sets};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rand_sl2(rng: &mut ChaCha8Rng) -> MobiusTransform {
    loop {
        let (a, b, cc) = (rand_complex(rng, 1.5), rand_complex(rng, 1.5), rand_complex(rng, 1.5));
        if a.norm() < 0.3 {
            continue;
        }
        let d = (1.0 + b * cc) / a;
        return MobiusTransform::new(a, b, cc, d).expect("det 1");
    }
}

struct Surface {
    entry: GalleryEntry,
    data: WeierstrassData,
    points: Vec<Complex64>,
}

fn gallery_surfaces() -> Vec<Surface> {
    gallery::entries()
        .into_iter()
        .map(|entry| {
            let data = entry.surface.to_data().expect("gallery data");
            let grid = entry.surface.grid.clone().expect("gallery grid");
            let points = grid.points().into_iter().filter(|z| data.domain().contains_finite(*z)).collect();
            Surface { entry, data, points }
        })
        .collect()
}

fn ac01() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut checked = 0;
    for family in 0..4 {
        for trial in 0..=100 {
            let class = match family {
                0 => DegeneracyClass::Identity,
                1 => DegeneracyClass::Hyperbolic { u: rng.gen_range(0.2..2.0) },
                2 => DegeneracyClass::Elliptic { alpha: rng.gen_range(0.2..1.5) },
                _ => DegeneracyClass::Parabolic,
            };
            let base = class.normal_form();
            let s = if trial == 0 {
                base
            } else {
                let t = rand_sl2(&mut rng);
                t.conj() * base * t.inverse()
            };
            let ef = ef_solve(&RationalFunction::from_mobius(&s), EF_TOL).map_err(|e| format!("{}: {e}", class.name()))?;
            ensure(ef.cardinality == class.expected_ef_count(), || {
                format!("{} trial {trial}: |E| = {}, expected {}", class.name(), ef.cardinality, class.expected_ef_count())
            })?;
            checked += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 5.0, || format!("took {secs:.2} s"))?;
    Ok(format!("{checked} maps (4 families, 100 conjugations each) in {secs:.2} s"))
}

fn ac02() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0e_f5);
    let mut points = 0;
    for trial in 0..100 {
        let f = rand_rational(&mut rng, 5);
        let got = ef_solve(&f, EF_TOL).map_err(|e| format!("trial {trial}: {e}"))?;
        let want = ef_bruteforce(&f, 1e-6);
        ensure(same_point_sets(&got.points, &want, 1e-5), || format!("trial {trial}: solver {:?}, oracle {:?}", got.points, want))?;
        points += want.len();
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.2} s"))?;
    Ok(format!("100 random f, {points} points matched within chordal 1e-5 in {secs:.2} s"))
}

fn ac03() -> Check {
    let f = RationalFunction::from_real(&[0.0, 0.0, 1.0], &[1.0]).unwrap();
    let ef = ef_solve(&f, EF_TOL).map_err(|e| e.to_string())?;
    // Polar oracle: r²e^{2iθ} = re^{−iθ} gives r ∈ {0, 1} with 3θ ∈ 2πZ, plus ∞.
    let mut want = vec![ExtendedComplex::new(0.0, 0.0), ExtendedComplex::Infinity];
    want.extend((0..3).map(|k| ExtendedComplex::Finite(Complex64::from_polar(1.0, TAU * k as f64 / 3.0))));
    ensure(same_point_sets(&ef.points, &want, 1e-12), || format!("got {:?}", ef.points))?;
    let adm = admissibility_check(2, ef.cardinality);
    ensure(adm.ef_bounds.verdict == Verdict::Fail, || format!("admissibility {:?}", adm.ef_bounds))?;
    Ok(format!("|E| = 5 matches the polar oracle; bound flagged: {}", adm.ef_bounds.statement))
}

fn ac04() -> Check {
    let (mut n, mut worst_null, mut min_space) = (0, 0.0f64, f64::INFINITY);
    for s in gallery_surfaces() {
        for &z in &s.points {
            let Ok(phi) = phi_forms(&s.data, z) else { continue };
            let (r, sp) = (phi.null_residual(), phi.spacelike());
            ensure(r < 1e-12 && sp > 0.0, || format!("{} at {z}: null residual {r:e}, spacelike {sp:e}", s.entry.name()))?;
            worst_null = worst_null.max(r);
            min_space = min_space.min(sp);
            n += 1;
        }
    }
    Ok(format!("{n} points: max null residual {worst_null:.1e}, min |phi|^2_L {min_space:.3e}"))
}

fn ac05() -> Check {
    let (mut n, mut metric, mut conf, mut harm) = (0, 0.0f64, 0.0f64, 0.0f64);
    for s in gallery_surfaces() {
        for &z in &s.points {
            let Ok(d) = fd_diagnostics(&s.data, z) else { continue };
            ensure(d.metric_rel_err < 1e-5 && d.conformal_residual < 1e-4 && d.harmonic_residual < 1e-4, || format!("{} at {z}: {d:?}", s.entry.name()))?;
            metric = metric.max(d.metric_rel_err);
            conf = conf.max(d.conformal_residual);
            harm = harm.max(d.harmonic_residual);
            n += 1;
        }
    }
    Ok(format!("{n} points: metric {metric:.1e}, conformality {conf:.1e}, harmonicity {harm:.1e}"))
}

fn ac06() -> Check {
    let cat = gallery::find("catenoid-r3").map_err(|e| e.to_string())?.surface;
    let data = cat.to_data().map_err(|e| e.to_string())?;
    let exact = check_periods(&data, &cat.loops, PeriodMethod::Auto).map_err(|e| e.to_string())?;
    ensure(exact.loops.iter().all(|l| l.method == "residue" && l.residuals.iter().all(|r| *r == 0.0)), || format!("{:?}", exact.loops))?;
    let quad = check_periods(&data, &cat.loops, PeriodMethod::Quadrature).map_err(|e| e.to_string())?;
    let worst = quad.loops.iter().flat_map(|l| l.residuals).fold(0.0f64, f64::max);
    ensure(worst < 1e-9, || format!("quadrature residual {worst:e}"))?;
    let broken = gallery::find("broken-period").map_err(|e| e.to_string())?.surface;
    let bdata = broken.to_data().map_err(|e| e.to_string())?;
    let b = check_periods(&bdata, &broken.loops, PeriodMethod::Auto).map_err(|e| e.to_string())?;
    let r0 = b.loops[0].residuals[0];
    ensure(!b.pass && (r0 - TAU).abs() < 1e-9, || format!("broken-period first residual {r0}"))?;
    Ok(format!("catenoid exact residuals 0, quadrature max {worst:.1e}; broken-period residual {r0:.12}"))
}

fn ac07() -> Check {
    let (mut minus, mut plus) = (0, 0);
    let mut out = Vec::new();
    for s in gallery_surfaces() {
        let Some(r) = s.data.as_rational() else { continue };
        let prod = r.psi1.mul(&r.psi2);
        let k = if prod.is_constant() { prod.eval(ExtendedComplex::Infinity).as_finite() } else { None };
        let coord = match k {
            Some(k) if (k + 1.0).norm() < 1e-14 => 3,
            Some(k) if (k - 1.0).norm() < 1e-14 => 2,
            _ => continue,
        };
        let mesh = sample_mesh(&s.data, s.entry.surface.grid.as_ref().unwrap(), None).map_err(|e| e.to_string())?;
        let vals: Vec<f64> = mesh.samples.iter().map(|m| m.sample.x[coord]).collect();
        let spread = vals.iter().fold(f64::NEG_INFINITY, |a, b| a.max(*b)) - vals.iter().fold(f64::INFINITY, |a, b| a.min(*b));
        ensure(!vals.is_empty() && spread < 1e-10, || format!("{}: x{} spread {spread:e}", s.entry.name(), coord + 1))?;
        if coord == 3 {
            minus += 1;
        } else {
            plus += 1;
        }
        out.push(format!("{} x{} {spread:.1e}", s.entry.name(), coord + 1));
    }
    ensure(minus > 0 && plus > 0, || "gallery lacks an embedding family".into())?;
    Ok(out.join(", "))
}

fn ac08() -> Check {
    let mut n = 0;
    let mut worst = 0.0f64;
    for s in gallery_surfaces() {
        for &z in &s.points {
            let Ok(phi) = phi_forms(&s.data, z) else { continue };
            let (p1, p2) = gauss_from_phi(&phi).map_err(|e| format!("{} at {z}: {e}", s.entry.name()))?;
            let err = chordal(p1, s.data.psi1_at(z)).max(chordal(p2, s.data.psi2_at(z)));
            ensure(err < 1e-10, || format!("{} at {z}: error {err:e}", s.entry.name()))?;
            worst = worst.max(err);
            n += 1;
        }
    }
    // One null vector per branch: ψ₁ = ∞, ψ₂ = ∞, both ∞, both finite.
    let (a, b) = (c(0.3, -0.7), c(-1.2, 0.4));
    let i = c(0.0, 1.0);
    let branches = [
        ([c(1.0, 0.0), -i, -b, b], (ExtendedComplex::Infinity, ExtendedComplex::Finite(b))),
        ([c(1.0, 0.0), i, -a, a], (ExtendedComplex::Finite(a), ExtendedComplex::Infinity)),
        ([c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)], (ExtendedComplex::Infinity, ExtendedComplex::Infinity)),
        ([a + b, -i * (a - b), 1.0 - a * b, 1.0 + a * b], (ExtendedComplex::Finite(a), ExtendedComplex::Finite(b))),
    ];
    for (phi, want) in branches {
        let got = gauss_from_phi(&PhiForms::new(phi)).map_err(|e| e.to_string())?;
        let err = chordal(got.0, want.0).max(chordal(got.1, want.1));
        ensure(err < 1e-10, || format!("branch {want:?}: got {got:?}"))?;
    }
    Ok(format!("{n} grid points, max chordal error {worst:.1e}; 4 branch vectors exact"))
}

fn ac09() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let (mut n, mut worst) = (0, 0.0f64);
    for s in gallery_surfaces() {
        for _ in 0..20 {
            let t = rand_sl2(&mut rng);
            let moved = lorentz_action(&s.data, &t).map_err(|e| e.to_string())?;
            for &z in &s.points {
                let (Ok(a), Ok(b)) = (induced_metric(&s.data, z), induced_metric(&moved, z)) else { continue };
                let rel = (a - b).abs() / a.abs().max(f64::MIN_POSITIVE);
                ensure(rel < 1e-9, || format!("{} at {z}: {a} vs {b}", s.entry.name()))?;
                worst = worst.max(rel);
                n += 1;
            }
        }
    }
    Ok(format!("{n} comparisons (20 actions per entry), max relative change {worst:.1e}"))
}

fn ac10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let (mut max_sum, mut preimages) = (0.0f64, 0);
    for trial in 0..100 {
        let deg = rng.gen_range(2..=5);
        let f = rand_rational_deg(&mut rng, deg);
        let r = rational_defect_bound(&f).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(r.sum <= 2.0 && r.ramification_total == 2 * deg - 2, || format!("trial {trial}: sum {}, total {}", r.sum, r.ramification_total))?;
        for v in &r.values {
            for &(p, k) in &v.preimages {
                let oracle = deflation_multiplicity(&f, p, v.value);
                ensure(oracle == k, || format!("trial {trial}: order at {p} over {} is {k}, oracle {oracle}", v.value))?;
                preimages += 1;
            }
        }
        max_sum = max_sum.max(r.sum);
    }
    Ok(format!("100 maps: max sum {max_sum:.4}, Riemann-Hurwitz exact, {preimages} orders match deflation"))
}

fn ac11() -> Check {
    let mut audits = 0;
    for e in gallery::entries() {
        let r = analyze(&e.surface, &Overrides::default()).map_err(|err| format!("{}: {err}", e.name()))?;
        ensure(r.verdicts.iter().all(|v| v.verdict != Verdict::Contradiction), || format!("{}: {:?}", e.name(), r.verdicts))?;
        let s = share(&e.surface, &e.surface, false, EF_TOL).map_err(|err| format!("{}: {err}", e.name()))?;
        ensure(s.theorem_b.as_ref().is_none_or(|t| t.verdict != Verdict::Contradiction), || format!("{}: unicity", e.name()))?;
        audits += r.verdicts.len() + 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1111);
    let sphere = Domain::SphereMinusPoints { punctures: vec![] };
    let mut max_q = 0;
    let mut trials = 0;
    while trials < 1000 {
        let f = rand_rational(&mut rng, 5);
        let Ok(ef) = ef_solve(&f, EF_TOL) else { continue };
        let Some(e) = ef.len() else { continue };
        let a = rand_rational(&mut rng, 5);
        let b = rand_rational(&mut rng, 5);
        let sv = shared_values(&a, &b, &sphere, false).map_err(|err| format!("trial {trials}: {err}"))?;
        if sv.identical {
            continue;
        }
        let threshold = f.degree() as i64 - e as i64 + 6;
        ensure((sv.q as i64) < threshold, || format!("would-be counterexample: psi = {a:?}, psi_hat = {b:?}, f = {f:?}, q = {}", sv.q))?;
        max_q = max_q.max(sv.q);
        trials += 1;
    }
    Ok(format!("{audits} gallery verdicts without CONTRADICTION; 1000 random pairs, max q = {max_q}"))
}

fn ac12() -> Check {
    let cfg = SchwarzCheckConfig::new(1.0, 0.999, 40, 36).map_err(|e| e.to_string())?;
    let id = schwarz_check(&RationalFunction::identity().into(), &cfg).map_err(|e| e.to_string())?;
    ensure((id.max_ratio - 1.0).abs() < 1e-9, || format!("identity ratio {}", id.max_ratio))?;
    let sq = schwarz_check(&RationalFunction::from_real(&[0.0, 0.0, 1.0], &[1.0]).unwrap().into(), &cfg).map_err(|e| e.to_string())?;
    ensure(sq.max_ratio <= 1.0 + 1e-6, || format!("z^2 ratio {}", sq.max_ratio))?;
    let mut rng = ChaCha8Rng::seed_from_u64(1212);
    let mut worst = 0.0f64;
    for k in 0..50 {
        let b = rand_blaschke(&mut rng, 5);
        let r = schwarz_check(&b.into(), &cfg).map_err(|e| format!("product {k}: {e}"))?;
        ensure(r.max_ratio <= 1.0 + 1e-6, || format!("product {k}: ratio {}", r.max_ratio))?;
        worst = worst.max(r.max_ratio);
    }
    Ok(format!("identity {:.12}, z^2 {:.9}, 50 Blaschke products max {worst:.9}", id.max_ratio, sq.max_ratio))
}

fn ac13() -> Check {
    let mut out = Vec::new();
    for cfg in shipped_probe_configs() {
        let r = neg_curvature_probe(&cfg).map_err(|e| format!("{}: {e}", cfg.name))?;
        ensure(r.curvature_negative && !r.samples.is_empty(), || format!("{}: max curvature {:?}", r.name, r.max_curvature))?;
        ensure(!r.shrink.is_empty() && r.shrink.iter().all(|s| s.pass), || format!("{}: {:?}", r.name, r.shrink))?;
        let last = r.shrink.iter().map(|s| *s.max_mu2_rel.last().unwrap()).fold(0.0f64, f64::max);
        out.push(format!("{}: {} samples, K <= {:.2e}, mu^2 at r0/1e8 {last:.1e}", r.name, r.samples.len(), r.max_curvature.unwrap()));
    }
    Ok(out.join("; "))
}

fn ac14() -> Check {
    let dirs = [tempfile::tempdir().map_err(|e| e.to_string())?, tempfile::tempdir().map_err(|e| e.to_string())?];
    for d in &dirs {
        let r = gallery::run(Some(d.path())).map_err(|e| e.to_string())?;
        ensure(r.ok, || r.lines.join("\n"))?;
    }
    let list = |d: &std::path::Path| {
        let mut v: Vec<String> = std::fs::read_dir(d).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
        v.sort();
        v
    };
    let names = list(dirs[0].path());
    ensure(names == list(dirs[1].path()) && names.len() == 27, || format!("file sets differ: {names:?}"))?;
    for n in &names {
        let a = std::fs::read(dirs[0].path().join(n)).unwrap();
        let b = std::fs::read(dirs[1].path().join(n)).unwrap();
        ensure(a == b, || format!("{n} differs"))?;
    }
    Ok(format!("{} files byte-identical across two runs", names.len()))
}

type Criterion = (&'static str, &'static str, fn() -> Check);

fn main() -> ExitCode {
    let checks: [Criterion; 14] = [
        ("AC-01", "E_f normal forms", ac01),
        ("AC-02", "E_f oracle equivalence", ac02),
        ("AC-03", "E_f of z^2 and admissibility", ac03),
        ("AC-04", "null identity and space-likeness", ac04),
        ("AC-05", "metric consistency", ac05),
        ("AC-06", "catenoid and broken periods", ac06),
        ("AC-07", "embedding constraints", ac07),
        ("AC-08", "Gauss map round trip", ac08),
        ("AC-09", "Lorentz invariance", ac09),
        ("AC-10", "rational defect bound", ac10),
        ("AC-11", "theorem audits", ac11),
        ("AC-12", "Schwarz check", ac12),
        ("AC-13", "dtau^2 probe", ac13),
        ("AC-14", "determinism", ac14),
    ];
    let mut failed = 0;
    for (id, title, f) in checks {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("{id} PASS {title}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{id} FAIL {title}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 14 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
