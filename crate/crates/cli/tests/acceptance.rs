use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bicx_core::bicomplex::{
    direct_sum, direct_sum_many, dot, dual, is_e1_isomorphism, random_complex, square, tensor, validate,
    DoubleComplex, Morphism, Window,
};
use bicx_core::cohomology::{
    aeppli, bott_chern, conjugate_dolbeault, de_rham, dolbeault, euler_characteristic, frolicher,
    induced_cohomology_map, table, CohomologyKind, CohomologyTable, Direction,
};
use bicx_core::exactlin::rank;
use bicx_core::geometry::{exceptional_consistency_check, projective_bundle};
use bicx_core::models::{iwasawa, preset, projective_space, serre_pairing_morphism, torus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

const RANDOM_INSTANCES: u64 = 120;
const RANDOM_BUDGET: Duration = Duration::from_secs(180);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cli(args: &[&str]) -> Result<BTreeMap<String, Value>, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["bicx"];
    argv.extend_from_slice(args);
    let code = bicx_cli::run(argv, &mut out, &mut err);
    ensure!(code == 0, "bicx {} exited {code}: {}", args.join(" "), String::from_utf8_lossy(&err));
    let text = String::from_utf8(out).map_err(|e| e.to_string())?;
    let mut records = BTreeMap::new();
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).map_err(|e| format!("bad JSON line {line}: {e}"))?;
        records.insert(v["kind"].as_str().unwrap_or_default().to_string(), v);
    }
    Ok(records)
}

fn json_multisets(record: &Value) -> Vec<Vec<usize>> {
    let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for e in record["entries"].as_array().into_iter().flatten() {
        let k = e["p"].as_i64().unwrap() + e["q"].as_i64().unwrap();
        by_degree.entry(k).or_default().push(e["dim"].as_u64().unwrap() as usize);
    }
    by_degree
        .into_values()
        .map(|mut v| {
            v.retain(|&d| d > 0);
            v.sort_unstable();
            v
        })
        .collect()
}

fn json_betti(record: &Value) -> Vec<usize> {
    record["entries"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|e| e["dim"].as_u64().unwrap() as usize)
        .collect()
}

fn expected(rows: &[&[usize]]) -> Vec<Vec<usize>> {
    rows.iter()
        .map(|r| {
            let mut v = r.to_vec();
            v.sort_unstable();
            v
        })
        .collect()
}

fn check_goldens(
    args: &[&str],
    betti: &[usize],
    e1: &[&[usize]],
    e2: &[&[usize]],
    bc: &[&[usize]],
    degeneration: Option<u64>,
) -> Outcome {
    let mut full = args.to_vec();
    full.extend_from_slice(&["--tables", "e1,e2,einf,derham,bc", "--json"]);
    let r = cli(&full)?;
    let got = json_betti(&r["derham"]);
    ensure!(got == betti, "betti {got:?}, expected {betti:?}");
    for (name, want) in [("e1", e1), ("e2", e2), ("bc", bc)] {
        let got = json_multisets(&r[name]);
        ensure!(got == expected(want), "{name} multisets {got:?}, expected {:?}", expected(want));
    }
    if let Some(d) = degeneration {
        let got = r["einf"]["degeneration_page"].as_u64();
        ensure!(got == Some(d), "degeneration page {got:?}, expected {d}");
    }
    Ok("betti, E1, E2, BC exact".into())
}

/// Brute-force Bott-Chern numbers of the Iwasawa algebra, straight from
/// `dφ3 = −φ1∧φ2` on six letters (φ1 φ2 φ3 φ̄1 φ̄2 φ̄3).
mod oracle {
    const LETTERS: usize = 6;

    fn bidegree(m: u32) -> (u32, u32) {
        ((m & 0b000111).count_ones(), (m & 0b111000).count_ones())
    }

    /// Image of one letter under d, as (coefficient, two letters).
    fn d_letter(i: usize) -> Option<(i128, [usize; 2])> {
        match i {
            2 => Some((-1, [0, 1])),
            5 => Some((-1, [3, 4])),
            _ => None,
        }
    }

    fn sorted_sign(seq: &[usize]) -> Option<(i128, u32)> {
        let mut inv = 0;
        for a in 0..seq.len() {
            for b in a + 1..seq.len() {
                if seq[a] == seq[b] {
                    return None;
                }
                if seq[a] > seq[b] {
                    inv += 1;
                }
            }
        }
        let mask = seq.iter().fold(0u32, |m, &i| m | (1 << i));
        Some((if inv % 2 == 0 { 1 } else { -1 }, mask))
    }

    /// `(∂, ∂̄)` applied to the monomial `m`.
    fn differentials(m: u32) -> (Vec<(i128, u32)>, Vec<(i128, u32)>) {
        let letters: Vec<usize> = (0..LETTERS).filter(|&i| m >> i & 1 == 1).collect();
        let (mut del, mut delbar) = (Vec::new(), Vec::new());
        for (pos, &l) in letters.iter().enumerate() {
            let Some((c, pair)) = d_letter(l) else { continue };
            let mut seq = letters[..pos].to_vec();
            seq.extend_from_slice(&pair);
            seq.extend_from_slice(&letters[pos + 1..]);
            if let Some((s, image)) = sorted_sign(&seq) {
                let v = c * s * if pos % 2 == 0 { 1 } else { -1 };
                if l < 3 {
                    del.push((v, image));
                } else {
                    delbar.push((v, image));
                }
            }
        }
        (del, delbar)
    }

    fn basis(p: u32, q: u32) -> Vec<u32> {
        (0u32..1 << LETTERS).filter(|&m| bidegree(m) == (p, q)).collect()
    }

    fn matrix(src: &[u32], tgt: &[u32], f: impl Fn(u32) -> Vec<(i128, u32)>) -> Vec<Vec<i128>> {
        let mut m = vec![vec![0i128; src.len()]; tgt.len()];
        for (c, &s) in src.iter().enumerate() {
            for (v, t) in f(s) {
                let r = tgt.iter().position(|&x| x == t).unwrap();
                m[r][c] += v;
            }
        }
        m
    }

    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    /// Integer row reduction, each row kept primitive.
    fn rank(mut m: Vec<Vec<i128>>) -> usize {
        let cols = m.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, piv);
            for i in r + 1..m.len() {
                let (a, b) = (m[r][c], m[i][c]);
                if b == 0 {
                    continue;
                }
                for j in 0..cols {
                    m[i][j] = a * m[i][j] - b * m[r][j];
                }
                let g = m[i].iter().fold(0, |g, &x| gcd(g, x));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
            r += 1;
        }
        r
    }

    pub fn bott_chern(p: u32, q: u32) -> usize {
        let here = basis(p, q);
        let del_t = basis(p + 1, q);
        let bar_t = basis(p, q + 1);
        let mut stacked = matrix(&here, &del_t, |m| differentials(m).0);
        stacked.extend(matrix(&here, &bar_t, |m| differentials(m).1));
        let kernel = here.len() - rank(stacked);
        let image = if p == 0 || q == 0 {
            0
        } else {
            let src = basis(p - 1, q - 1);
            let mid = basis(p - 1, q);
            let dbar = matrix(&src, &mid, |m| differentials(m).1);
            let del = matrix(&mid, &here, |m| differentials(m).0);
            let prod: Vec<Vec<i128>> = del
                .iter()
                .map(|row| (0..src.len()).map(|j| (0..mid.len()).map(|k| row[k] * dbar[k][j]).sum()).collect())
                .collect();
            rank(prod)
        };
        kernel - image
    }
}

fn criterion_1() -> Outcome {
    check_goldens(
        &["model", "iwasawa"],
        &[1, 4, 8, 10, 8, 4, 1],
        &[&[1], &[2, 3], &[2, 6, 3], &[1, 6, 6, 1], &[3, 6, 2], &[3, 2], &[1]],
        &[&[1], &[2, 2], &[2, 4, 2], &[1, 4, 4, 1], &[2, 4, 2], &[2, 2], &[1]],
        &[&[1], &[2, 2], &[3, 4, 3], &[1, 6, 6, 1], &[2, 8, 2], &[3, 3], &[1]],
        Some(2),
    )?;
    let bc = bott_chern(iwasawa().complex());
    for (p, q, want) in [(1, 0, 2), (1, 1, 4), (2, 2, 8)] {
        let brute = oracle::bott_chern(p as u32, q as u32);
        ensure!(brute == want, "oracle h_BC^{{{p},{q}}} = {brute}, expected {want}");
        ensure!(bc.get(p, q) == brute, "h_BC^{{{p},{q}}} = {}, oracle {brute}", bc.get(p, q));
    }
    for (p, q) in Window::square(0, 3).bidegrees() {
        let brute = oracle::bott_chern(p as u32, q as u32);
        ensure!(bc.get(p, q) == brute, "h_BC^{{{p},{q}}} = {}, oracle {brute}", bc.get(p, q));
    }
    Ok("betti, E1, E2 (degenerates at 2), BC exact; BC matches brute force on all 16 bidegrees".into())
}

fn criterion_2() -> Outcome {
    check_goldens(
        &["blowup", "--ambient", "iwasawa", "--center", "torus1", "--codim", "2"],
        &[1, 4, 9, 12, 9, 4, 1],
        &[&[1], &[2, 3], &[2, 7, 3], &[1, 7, 7, 1], &[3, 7, 2], &[3, 2], &[1]],
        &[&[1], &[2, 2], &[2, 5, 2], &[1, 5, 5, 1], &[2, 5, 2], &[2, 2], &[1]],
        &[&[1], &[2, 2], &[3, 5, 3], &[1, 7, 7, 1], &[2, 9, 2], &[3, 3], &[1]],
        None,
    )
}

fn criterion_3() -> Outcome {
    let bases: Vec<(&str, DoubleComplex)> = vec![
        ("point", dot(0, 0)),
        ("torus1", torus(1).unwrap().into_complex()),
        ("torus2", torus(2).unwrap().into_complex()),
        ("iwasawa", iwasawa().into_complex()),
    ];
    let mut checked = 0;
    for (name, base) in &bases {
        for n in [2, 3] {
            let (k, _) = projective_bundle(base, n).map_err(|e| e.to_string())?;
            for kind in CohomologyKind::ALL {
                let unit = table(base, kind);
                let want = (1..n as i32).fold(unit.clone(), |acc, i| acc.add(&unit.shifted(i)));
                let got = table(&k, kind);
                ensure!(got == want, "{name}, n = {n}, {}: {got:?} != {want:?}", kind.name());
                checked += 1;
            }
        }
    }
    for n in [1, 2, 3, 4] {
        let (k, _) = projective_bundle(&dot(0, 0), n).map_err(|e| e.to_string())?;
        let p = projective_space(n - 1).map_err(|e| e.to_string())?;
        for kind in CohomologyKind::ALL {
            ensure!(table(&k, kind) == table(p.complex(), kind), "point, n = {n}, {}", kind.name());
        }
    }
    Ok(format!("{checked} bundle tables and P^0..P^3 over a point"))
}

fn criterion_4() -> Outcome {
    let centers = [
        ("point", dot(0, 0)),
        ("torus1", torus(1).unwrap().into_complex()),
        ("torus2", torus(2).unwrap().into_complex()),
    ];
    for (name, z) in &centers {
        for r in [2, 3, 4] {
            let ok = exceptional_consistency_check(z, r).map_err(|e| e.to_string())?;
            ensure!(ok, "exceptional divisor inconsistent for {name}, r = {r}");
        }
    }
    Ok("9 (center, r) pairs".into())
}

fn bijective_everywhere(f: &Morphism, kind: CohomologyKind) -> bool {
    induced_cohomology_map(f, kind)
        .values()
        .all(|m| m.rows() == m.cols() && rank(m) == m.cols())
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut morphisms: Vec<(String, Morphism)> = Vec::new();
    for name in ["point", "torus1", "torus2", "torus3", "iwasawa", "p1", "p2", "p3"] {
        let m = preset(name).unwrap();
        morphisms.push((format!("serre({name})"), serre_pairing_morphism(&m).map_err(|e| e.to_string())?));
    }
    for i in 0..48 {
        let side = rng.gen_range(2..=4);
        let w = Window::new(0, side - 1, 0, side - 1);
        let a = random_complex(1000 + i, w, rng.gen_range(0..=8)).map_err(|e| e.to_string())?;
        let squares: Vec<DoubleComplex> = (0..rng.gen_range(1..=3))
            .map(|_| square(rng.gen_range(0..side - 1), rng.gen_range(0..side - 1)))
            .collect();
        let mut parts = vec![&a];
        parts.extend(squares.iter());
        let sum = direct_sum_many(&parts);
        morphisms.push((format!("random {i} + {} squares", squares.len()), sum.inclusions[0].clone()));
    }
    let mut accepted = 0;
    for (name, f) in &morphisms {
        let (ok, report) = is_e1_isomorphism(f);
        ensure!(ok, "{name} is not an E1-isomorphism:\n{report}");
        for kind in [CohomologyKind::BottChern, CohomologyKind::Aeppli] {
            ensure!(bijective_everywhere(f, kind), "{name}: {} map not bijective", kind.name());
        }
        accepted += 1;
    }
    ensure!(accepted >= 50, "only {accepted} E1-isomorphisms");

    let mut rejected = 0;
    for i in 0..20 {
        let w = Window::square(0, 2);
        let a = random_complex(2000 + i, w, rng.gen_range(1..=6)).map_err(|e| e.to_string())?;
        let (p, q) = (rng.gen_range(0..3), rng.gen_range(0..3));
        let (_, inc, _) = direct_sum(&a, &dot(p, q));
        let zero = Morphism::zero(&a, &a);
        for f in [inc, zero] {
            let (ok, report) = is_e1_isomorphism(&f);
            let nontrivial = !dolbeault(f.source()).is_zero() || !dolbeault(f.target()).is_zero();
            if !nontrivial {
                continue;
            }
            let must_fail = f.target().total_dim() != f.source().total_dim() || !f.is_nonzero();
            if must_fail {
                ensure!(!ok, "non-isomorphism {i} accepted");
                let w = report.first_failure().ok_or("no failing bidegree reported")?;
                ensure!(!w.is_bijective(), "reported bidegree {:?} is bijective", w.at);
                rejected += 1;
            }
        }
    }
    ensure!(rejected > 0, "no non-isomorphisms generated");
    Ok(format!("{accepted} E1-isos with bijective BC/Aeppli, {rejected} non-isos rejected"))
}

fn table_sum_check(a: &DoubleComplex, seed: u64) -> Result<(), String> {
    let violations = validate(a);
    ensure!(violations.is_empty(), "seed {seed}: {}", violations[0]);
    let dr = de_rham(a);
    let chi = euler_characteristic(a);
    let alternating: i64 = dr
        .entries()
        .map(|(s, d)| if s.degree() % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum();
    ensure!(chi == alternating, "seed {seed}: chi {chi} vs betti {alternating}");

    let ss = frolicher(a, Direction::Column);
    let e1 = dolbeault(a);
    ensure!(ss.pages[0] == e1, "seed {seed}: E1 differs from Dolbeault");
    for (r, page) in ss.pages.iter().enumerate() {
        ensure!(page.euler_characteristic() == chi, "seed {seed}: chi of E{}", r + 1);
        if r > 0 {
            for (s, d) in page.entries() {
                let prev = ss.pages[r - 1].entries().find(|(t, _)| *t == s).map_or(0, |(_, d)| d);
                ensure!(d <= prev, "seed {seed}: E{} grows at {s:?}", r + 1);
            }
        }
    }
    if let Some((lo, hi)) = a.window().degree_range() {
        for k in lo..=hi {
            ensure!(ss.e_infinity.degree(k) == dr.degree(k), "seed {seed}: E_inf vs b_{k}");
        }
    }

    let w = a.window();
    let n = w.p_max.max(w.q_max);
    let d = dual(a, n);
    let (dd, dbc, dae) = (dolbeault(&d), bott_chern(&d), aeppli(a));
    for (p, q) in d.window().bidegrees() {
        ensure!(dd.get(p, q) == e1.get(n - p, n - q), "seed {seed}: Dolbeault duality at ({p},{q})");
        ensure!(dbc.get(p, q) == dae.get(n - p, n - q), "seed {seed}: BC/Aeppli duality at ({p},{q})");
    }

    if a.has_sigma() {
        ensure!(conjugate_dolbeault(a) == e1.transposed(), "seed {seed}: sigma symmetry of Dolbeault");
        let bc = bott_chern(a);
        ensure!(bc == bc.transposed(), "seed {seed}: sigma symmetry of BC");
        ensure!(dae == dae.transposed(), "seed {seed}: sigma symmetry of Aeppli");
    }
    Ok(())
}

fn convolve(a: &CohomologyTable, b: &CohomologyTable, p: i32, q: i32) -> usize {
    a.window()
        .bidegrees()
        .map(|(i, j)| a.get(i, j) * b.get(p - i, q - j))
        .sum()
}

fn kunneth_check(a: &DoubleComplex, b: &DoubleComplex, seed: u64) -> Result<(), String> {
    let t = tensor(a, b);
    let (ta, tb, tt) = (dolbeault(a), dolbeault(b), dolbeault(&t));
    for (p, q) in t.window().bidegrees() {
        ensure!(tt.get(p, q) == convolve(&ta, &tb, p, q), "seed {seed}: Dolbeault Kunneth at ({p},{q})");
    }
    let (ra, rb, rt) = (de_rham(a), de_rham(b), de_rham(&t));
    if let Some((lo, hi)) = t.window().degree_range() {
        for k in lo..=hi {
            let want: usize = (lo..=k).map(|i| ra.degree(i) * rb.degree(k - i)).sum();
            ensure!(rt.degree(k) == want, "seed {seed}: de Rham Kunneth in degree {k}");
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut with_sigma = 0;
    for seed in 0..RANDOM_INSTANCES {
        let (wp, wq) = if seed % 2 == 0 {
            let s = rng.gen_range(1..=6);
            (s, s)
        } else {
            (rng.gen_range(1..=6), rng.gen_range(1..=6))
        };
        let size = rng.gen_range(0..=40);
        let a = random_complex(seed, Window::new(0, wp - 1, 0, wq - 1), size).map_err(|e| e.to_string())?;
        with_sigma += usize::from(a.has_sigma());
        table_sum_check(&a, seed)?;
        let b = random_complex(10_000 + seed, Window::square(0, 1), rng.gen_range(1..=3)).map_err(|e| e.to_string())?;
        let small = if size > 12 {
            random_complex(20_000 + seed, Window::new(0, wp - 1, 0, wq - 1), 12).map_err(|e| e.to_string())?
        } else {
            a
        };
        kunneth_check(&small, &b, seed)?;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < RANDOM_BUDGET, "suite took {elapsed:?}");
    Ok(format!(
        "{RANDOM_INSTANCES} instances ({with_sigma} with sigma) in {:.1}s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_7() -> Outcome {
    let mut models = vec![iwasawa()];
    for n in 1..=3 {
        models.push(torus(n).unwrap());
        models.push(projective_space(n).unwrap());
    }
    for m in &models {
        let f = serre_pairing_morphism(m).map_err(|e| e.to_string())?;
        let (ok, report) = is_e1_isomorphism(&f);
        ensure!(ok, "{}: not an E1-isomorphism\n{report}", m.name());
    }
    Ok(format!("{} models", models.len()))
}

fn run(n: usize, f: fn() -> Outcome) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    match outcome {
        Ok(detail) => {
            println!("criterion {n}: PASS ({detail})");
            true
        }
        Err(detail) => {
            println!("criterion {n}: FAIL ({detail})");
            false
        }
    }
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 7] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
    ];
    let results: Vec<bool> = criteria.iter().enumerate().map(|(i, f)| run(i + 1, *f)).collect();
    let indirect = results[..4].iter().all(|&ok| ok);
    println!(
        "criterion 8: {} (manifold-level analytic claims are not checked directly; covered by criteria 1-4)",
        if indirect { "PASS" } else { "FAIL" }
    );
    if results.iter().all(|&ok| ok) && indirect {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
