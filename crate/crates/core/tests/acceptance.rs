//! The nine acceptance criteria. Each prints one PASS/FAIL line with its
//! runtime and limit; the test fails if any criterion fails or runs over.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use equiloc::cli::{parse_problem, run, RunOptions};
use equiloc::comodule::{equalizer_kernel, reynolds, Element, FreeComodule, GradedMap, GroupAlgebra};
use equiloc::eqcoh::{
    bott_pushforward, concentration_check, fixed_components, fixed_locus_unit, presentation_pushforward, Class,
    LocalizedClass, PointRing, PointRingOptions, ProjectiveModelRing,
};
use equiloc::fixedloc::{
    admissible_field_sizes, concentration_section_with, fixed_locus_ideal, fixed_points_oracle, vanishing_set,
    zero_locus, EquivariantAffineScheme, SectionChoice,
};
use equiloc::lattice::{quotient_lattice, restrict, Character, CharacterLattice, SubgroupPresentation};
use equiloc::linalg::Matrix;
use equiloc::polyalg::{ideal_equal, parse_poly, Grading, GroebnerConfig, Ideal};
use equiloc::scalar::Field;
use equiloc::smith::{
    is_unstable, power_on_inverse, series_inverse_oracle, smith_fixed_cohomology, unstable_part, SteenrodModule,
    Window,
};

type Outcome = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Instance {
    name: &'static str,
    scheme: EquivariantAffineScheme,
    sub: SubgroupPresentation,
}

fn instance(
    name: &'static str,
    rank: usize,
    torsion: Vec<i64>,
    relations: &[&[i64]],
    vars: &[(&str, &[i64])],
    ideal: &[&str],
) -> Instance {
    let lattice = CharacterLattice::new(rank, torsion).unwrap();
    let names: Vec<String> = vars.iter().map(|(n, _)| n.to_string()).collect();
    let weights = vars.iter().map(|(_, w)| lattice.character(w).unwrap()).collect();
    let gens = ideal.iter().map(|g| parse_poly(g, &names, Field::Rational).unwrap()).collect();
    let grading = Grading::new(lattice.clone(), weights).unwrap();
    let ideal = Ideal::new(Field::Rational, names.len(), gens).unwrap();
    let scheme = EquivariantAffineScheme::new(names, grading, ideal, &GroebnerConfig::default()).unwrap();
    let sub = if relations.is_empty() {
        SubgroupPresentation::whole(&lattice)
    } else {
        let rels: Vec<Character> = relations.iter().map(|r| lattice.character(r).unwrap()).collect();
        quotient_lattice(&lattice, &rels).unwrap()
    };
    Instance { name, scheme, sub }
}

fn suite() -> Vec<Instance> {
    vec![
        instance("A^2, G_m, weights 1 2", 1, vec![], &[], &[("x", &[1]), ("y", &[2])], &[]),
        instance("A^2, G_m, weights 1 0", 1, vec![], &[], &[("x", &[1]), ("y", &[0])], &[]),
        instance("hyperbola, G_m", 1, vec![], &[], &[("x", &[1]), ("y", &[-1])], &["x*y - 1"]),
        instance("hyperbola, mu_2 in G_m", 1, vec![], &[&[2]], &[("x", &[2]), ("y", &[-2])], &["x*y - 1"]),
        instance("A^3, mu_3 in G_m", 1, vec![], &[&[3]], &[("x", &[1]), ("y", &[3]), ("z", &[2])], &["x^3 - y"]),
        instance(
            "cone, G_m^2",
            2,
            vec![],
            &[],
            &[("x", &[1, 0]), ("y", &[0, 1]), ("z", &[1, 1])],
            &["x*y - z"],
        ),
        instance(
            "cone, diagonal circle in G_m^2",
            2,
            vec![],
            &[&[1, -1]],
            &[("x", &[1, 0]), ("y", &[0, 1]), ("z", &[1, 1])],
            &["x*y - z"],
        ),
        instance("A^2, first factor of G_m^2", 2, vec![], &[&[0, 1]], &[("x", &[1, 0]), ("y", &[0, 1])], &[]),
        instance(
            "cubic surface, mu_3",
            0,
            vec![3],
            &[],
            &[("x", &[1]), ("y", &[0]), ("z", &[0])],
            &["x^3 + y^3 + z^3"],
        ),
        instance("parabola, mu_5", 0, vec![5], &[], &[("x", &[1]), ("y", &[2])], &["x^2 - y"]),
        instance("A^2, mu_5", 0, vec![5], &[], &[("x", &[1]), ("y", &[4])], &[]),
        instance(
            "quadric, G_m x mu_3",
            1,
            vec![3],
            &[],
            &[("x", &[1, 1]), ("y", &[-1, 2]), ("z", &[0, 1])],
            &["x*y - z^3"],
        ),
    ]
}

fn criterion_1() -> Outcome {
    let instances = suite();
    ensure!(instances.len() >= 10, "only {} instances", instances.len());
    let mut checks = 0;
    for inst in &instances {
        let ideal = ok(fixed_locus_ideal(&inst.scheme, &inst.sub))?;
        let sizes = admissible_field_sizes(&inst.scheme, &inst.sub, 64);
        ensure!(sizes.len() >= 2, "{}: fewer than two admissible field sizes", inst.name);
        for &q in &sizes[..2] {
            let ours = ok(vanishing_set(&ideal, q))?;
            let brute = ok(fixed_points_oracle(&inst.scheme, &inst.sub, q))?;
            ensure!(ours == brute, "{}: point sets differ over F_{q}", inst.name);
            checks += 1;
        }
    }
    Ok(format!("{} instances, {checks} exact set comparisons", instances.len()))
}

fn criterion_2() -> Outcome {
    let cfg = GroebnerConfig::default();
    let mut count = 0;
    for inst in suite() {
        let target = ok(fixed_locus_ideal(&inst.scheme, &inst.sub))?;
        for choice in [SectionChoice::Coordinates, SectionChoice::Minimal] {
            let (rep, s) = ok(concentration_section_with(&inst.scheme, &inst.sub, choice, &cfg))?;
            ensure!(
                ok(ideal_equal(&ok(zero_locus(&s, &inst.scheme))?, &target, &cfg))?,
                "{}: zero locus differs from the fixed locus",
                inst.name
            );
            let lattice = inst.scheme.lattice();
            for (chi, comp) in rep.characters().iter().zip(s.components()) {
                ensure!(!ok(restrict(chi, &inst.sub))?.is_zero(), "{}: {chi} is trivial on C", inst.name);
                let deg = inst.scheme.grading().homogeneous_degree(comp);
                ensure!(
                    deg.is_some_and(|d| lattice.add(&d, chi).is_zero()),
                    "{}: component of {chi} is not of the compensating degree",
                    inst.name
                );
            }
            count += 1;
        }
    }
    Ok(format!("{count} sections certified"))
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn criterion_3() -> Outcome {
    let q = Field::Rational;
    let mut regular = 0;
    for lattice in [
        CharacterLattice::free(1),
        CharacterLattice::free(2),
        CharacterLattice::new(0, vec![3]).unwrap(),
        CharacterLattice::new(1, vec![5]).unwrap(),
    ] {
        let ka = GroupAlgebra::new(lattice.clone(), q);
        let mut keys = Vec::new();
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                let coords: Vec<i64> = [a, b].into_iter().take(lattice.dim()).collect();
                let c = lattice.character(&coords).unwrap();
                if !keys.contains(&c) {
                    keys.push(c);
                }
            }
        }
        let kernel = ok(equalizer_kernel(&ka.coaction_table(keys), &SubgroupPresentation::whole(&lattice)))?;
        ensure!(kernel == vec![ka.unit()], "(O[G])^G is not spanned by e_0 for {lattice}");
        regular += 1;
    }

    let l = CharacterLattice::free(1);
    let subgroups: Vec<SubgroupPresentation> = (0..5)
        .map(|n| {
            if n == 0 {
                SubgroupPresentation::whole(&l)
            } else {
                quotient_lattice(&l, &[l.character(&[n]).unwrap()]).unwrap()
            }
        })
        .collect();
    let free = |ws: &[i64]| FreeComodule::new(l.clone(), ws.iter().map(|&w| l.character(&[w]).unwrap()).collect()).unwrap();

    let maps = (
        proptest::collection::vec(-3i64..=3, 1..6),
        proptest::collection::vec(-3i64..=3, 1..6),
        proptest::collection::vec(-4i64..=4, 36),
        proptest::collection::vec(-4i64..=4, 6),
        0usize..5,
    );
    let functorial = Cell::new(0);
    ok(runner(100).run(&maps, |(src, tgt, entries, xs, k)| {
        let sub = &subgroups[k];
        let (s, t) = (free(&src), free(&tgt));
        let rows = (0..tgt.len())
            .map(|i| {
                (0..src.len())
                    .map(|j| if src[j] == tgt[i] { q.from_i64(entries[i * 6 + j]) } else { q.zero() })
                    .collect()
            })
            .collect();
        let f = GradedMap::new(s.clone(), t.clone(), Matrix::from_rows(q, src.len(), rows)).unwrap();
        let x: Element<usize> =
            (0..src.len()).map(|i| (i, q.from_i64(xs[i]))).filter(|(_, c)| !c.is_zero()).collect();
        let (fg, src_idx, tgt_idx) = f.on_fixed(sub).unwrap();
        let rho_x = reynolds(&s, &x, sub).unwrap();
        let local: Element<usize> = src_idx
            .iter()
            .enumerate()
            .filter_map(|(a, i)| rho_x.get(i).map(|c| (a, c.clone())))
            .collect();
        let lhs: Element<usize> = fg.apply(&local).into_iter().map(|(a, c)| (tgt_idx[a], c)).collect();
        let rhs = reynolds(&t, &f.apply(&x), sub).unwrap();
        prop_assert_eq!(lhs, rhs);
        functorial.set(functorial.get() + 1);
        Ok(())
    }))?;

    let multisets = (proptest::collection::vec(-6i64..=6, 0..8), 0usize..5);
    let quotients = Cell::new(0);
    ok(runner(100).run(&multisets, |(ws, k)| {
        let sub = &subgroups[k];
        let quotient = free(&ws).quotient_by_fixed(sub).unwrap();
        prop_assert!(quotient.fixed_basis(sub).unwrap().is_empty());
        let kernel = equalizer_kernel(&quotient.coaction_table(q), sub).unwrap();
        prop_assert!(kernel.is_empty());
        quotients.set(quotients.get() + 1);
        Ok(())
    }))?;
    let (functorial, quotients) = (functorial.get(), quotients.get());
    ensure!(functorial == 100 && quotients == 100, "ran {functorial} maps and {quotients} multisets");
    Ok(format!("{regular} regular comodules, {functorial} graded maps, {quotients} weight multisets"))
}

/// `P(W)` models: pairwise-distinct weights, `n ≤ 5`, over `G_m`, `μ_3`, `μ_5`.
fn models() -> Vec<(String, ProjectiveModelRing)> {
    let mut out = Vec::new();
    let gm = CharacterLattice::free(1);
    let gm_ring = PointRing::new(&gm, PointRingOptions::default()).unwrap();
    let gm_sets: [&[i64]; 7] = [&[0], &[0, 1], &[-1, 2], &[0, 1, 2], &[-2, 1, 3], &[0, 1, 3, 7], &[-3, -1, 0, 2, 5]];
    for ws in gm_sets {
        let chars = ws.iter().map(|&w| gm.character(&[w]).unwrap()).collect();
        out.push((format!("G_m {ws:?}"), ProjectiveModelRing::new(&gm_ring, chars).unwrap()));
    }
    for (p, sets) in [(3i64, vec![vec![0], vec![0, 1], vec![1, 2], vec![0, 1, 2]]), (5, vec![vec![0, 3], vec![0, 1, 2], vec![1, 2, 4, 0], vec![0, 1, 2, 3, 4]])] {
        let l = CharacterLattice::new(0, vec![p]).unwrap();
        let ring = PointRing::new(&l, PointRingOptions::default()).unwrap();
        for ws in sets {
            let chars = ws.iter().map(|&w| l.character(&[w]).unwrap()).collect();
            out.push((format!("mu_{p} {ws:?}"), ProjectiveModelRing::new(&ring, chars).unwrap()));
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let mut checks = 0;
    let all = models();
    for (name, model) in &all {
        let n = model.dim() as u32;
        for k in 0..=n + 3 {
            let x = model.zeta().pow(k);
            let bott = ok(bott_pushforward(&x, model))?;
            let direct = ok(presentation_pushforward(&x, model))?;
            ensure!(bott == LocalizedClass::from_class(direct), "{name}: k = {k} disagrees");
            checks += 1;
        }
        let whole = SubgroupPresentation::whole(model.point().lattice());
        let unit = ok(fixed_locus_unit(model, &whole))?;
        ensure!(unit == LocalizedClass::from_class(model.one()), "{name}: fixed-locus unit is {unit}");
    }
    Ok(format!("{} models, {checks} pushforwards, all units equal 1", all.len()))
}

fn criterion_5() -> Outcome {
    let all = models();
    for (name, model) in &all {
        let whole = SubgroupPresentation::whole(model.point().lattice());
        let report = ok(concentration_check(model, &whole))?;
        ensure!(report.invertible, "{name}: not invertible");
        ensure!(!report.unit.is_zero(), "{name}: zero unit");
        let base = model.point().ring();
        let mut product = Class::constant(base, report.unit.clone());
        for (chi, k) in &report.factors {
            ensure!(!ok(restrict(chi, &whole))?.is_zero(), "{name}: factor e{chi} not in E_C");
            product = product.mul(&ok(model.point().euler(chi))?.pow(*k));
        }
        ensure!(product == report.determinant, "{name}: factorization does not reproduce the determinant");
        let expected = fixed_components(model, &whole).map_err(|e| e.to_string())?.len();
        ensure!(report.components.len() == expected, "{name}: component count");
    }
    Ok(format!("{} determinants factor as unit times E_C", all.len()))
}

fn criterion_6() -> Outcome {
    for p in [3u64, 5, 7] {
        let series = ok(series_inverse_oracle(p, 10))?;
        for (i, s) in series.iter().enumerate() {
            ensure!(ok(power_on_inverse(i as u32, p))? == *s, "p = {p}: P^{i}(v^-1) disagrees");
        }
        let l = CharacterLattice::new(0, vec![p as i64]).unwrap();
        let point = PointRing::new(&l, PointRingOptions::default()).unwrap();
        let module = ok(SteenrodModule::point(&point))?;
        let v = Class::v(point.ring(), 0);
        let total = module.total_power(&v, 10);
        for i in 0..=10 {
            let expected = match i {
                0 => v.clone(),
                1 => v.pow(p as u32),
                _ => Class::zero(point.ring()),
            };
            ensure!(total.coefficient(i) == expected, "p = {p}: P^{i}(v) = {}", total.coefficient(i));
        }
    }
    Ok("p in {3, 5, 7}, i <= 10".into())
}

fn criterion_7() -> Outcome {
    let window = ok(Window::new(-4, 20, -2, 10))?;
    let mut degrees = 0;
    for p in [2i64, 3, 5] {
        let l = CharacterLattice::new(0, vec![p]).unwrap();
        let point = PointRing::new(&l, PointRingOptions::default()).unwrap();
        let module = ok(SteenrodModule::point(&point))?;
        let whole = SubgroupPresentation::whole(&l);
        let chi = l.basis_character(0);
        let un = ok(unstable_part(&module, &[(chi.clone(), 1)], &whole, &window))?;
        ensure!(un.coincides_with_module(), "p = {p}: unstable part differs from the module");
        degrees += un.degrees.len();
        let inv_v = ok(LocalizedClass::new(point.one(), BTreeMap::from([(chi.clone(), 1)]), &whole))?;
        let u_inv_v = ok(LocalizedClass::new(Class::u(point.ring(), 0), BTreeMap::from([(chi, 1)]), &whole))?;
        ensure!(!ok(is_unstable(&module, &inv_v))?, "p = {p}: v^-1 accepted");
        ensure!(!ok(is_unstable(&module, &u_inv_v))?, "p = {p}: u v^-1 accepted");
    }
    Ok(format!("p in {{2, 3, 5}}, window {window}, {degrees} bidegrees; v^-1 and u v^-1 rejected"))
}

fn criterion_8() -> Outcome {
    let mut lines = Vec::new();
    for (p, n) in [(3i64, 1usize), (3, 2), (5, 1)] {
        let l = CharacterLattice::new(0, vec![p; n]).unwrap();
        let point = PointRing::new(&l, PointRingOptions::default()).unwrap();
        let module = ok(SteenrodModule::point(&point))?;
        let h = ok(smith_fixed_cohomology(&module, &ok(Window::new(0, 8, 0, 4))?))?;
        ensure!(h.total_rank() == 1, "point of (mu_{p})^{n}: rank {}", h.total_rank());
        lines.push(format!("(mu_{p})^{n} point: 1"));
    }
    for p in [2i64, 3, 5, 7] {
        let l = CharacterLattice::new(0, vec![p]).unwrap();
        let point = PointRing::new(&l, PointRingOptions::default()).unwrap();
        let model = ok(ProjectiveModelRing::new(&point, vec![l.zero(), l.basis_character(0)]))?;
        let module = ok(SteenrodModule::model(&model))?;
        let h = ok(smith_fixed_cohomology(&module, &ok(Window::new(0, 4, 0, 2))?))?;
        let whole = SubgroupPresentation::whole(&l);
        let expected: usize = ok(fixed_components(&model, &whole))?.iter().map(|c| c.dim()).sum();
        ensure!(expected == 2, "mu_{p}: fixed components have total dimension {expected}");
        ensure!(h.total_rank() == expected, "P(1 + chi) over mu_{p}: rank {}", h.total_rank());
        lines.push(format!("P(1+chi)/mu_{p}: 2"));
    }
    Ok(lines.join(", "))
}

fn criterion_9() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("problems");
    let mut files: Vec<_> = ok(std::fs::read_dir(&dir))?.map(|e| e.unwrap().path()).collect();
    files.retain(|p| p.extension().is_some_and(|e| e == "equiloc"));
    files.sort();
    ensure!(!files.is_empty(), "no bundled problems");
    for path in &files {
        let text = ok(std::fs::read_to_string(path))?;
        let p = ok(parse_problem(&text))?;
        let formatted = p.to_string();
        let again = ok(parse_problem(&formatted))?;
        ensure!(again == p && again.to_string() == formatted, "{}: not a fixpoint", path.display());
        let opts = RunOptions::default();
        let (a, b) = (run(&p, &opts), run(&again, &opts));
        ensure!(a.to_text() == b.to_text(), "{}: text differs", path.display());
        ensure!(a.to_json_string() == b.to_json_string(), "{}: JSON differs", path.display());
    }
    Ok(format!("{} bundled files", files.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, u64); 9] = [
        ("fixed-locus oracle suite", criterion_1, 10),
        ("concentration-section certificate", criterion_2, 5),
        ("comodule laws", criterion_3, 2),
        ("Bott = presentation pushforward", criterion_4, 5),
        ("concentration determinant", criterion_5, 2),
        ("Steenrod formulas", criterion_6, 1),
        ("unstable parts", criterion_7, 3),
        ("Dwyer-Wilkerson end-to-end", criterion_8, 10),
        ("CLI determinism and round-trip", criterion_9, 1),
    ];
    let mut failures = Vec::new();
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(*limit) => Err("time limit exceeded".to_string()),
            other => other,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        println!(
            "criterion {}: {status} {name} [{:.3} s / {limit} s] {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
        if outcome.is_err() {
            failures.push(i + 1);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

#[test]
fn suite_covers_required_groups() {
    let suite = suite();
    let finite = suite.iter().filter(|i| i.scheme.lattice().rank() == 0).count();
    let proper = suite.iter().filter(|i| i.sub.quotient() != i.sub.ambient()).count();
    assert!(finite >= 2);
    assert!(proper >= 3);
}
