//! Acceptance suite. One line per criterion, then a nonzero exit if any failed.
//!
//! Runs without the libtest harness so the report is always printed.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use gpot_core::algebra::{factorial, LaurentPoly, TSeries, VarList};
use gpot_core::graph::{
    elementary_transformation, enumerate_trivalent, is_isomorphic, normalize_coloring,
    ColoredGraph, Leaf, Orientation, Vertex,
};
use gpot_core::mutation::{mu_nu_factors, mutate, verify_mutation};
use gpot_core::period::{laplace_to_periods, periods_bruteforce};
use gpot_core::potential::{graph_potential, grassmannian_limit, vertex_potential};
use gpot_core::tqft::{
    bessel, glue, k_state, trace_formula, trace_table, wdvv_check, wdvv_check_with, KernelMatrix,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn brute(g: &ColoredGraph, order: usize) -> Vec<BigInt> {
    let b = graph_potential(g).expect("valid graph");
    periods_bruteforce(&b.potential, order).expect("integral potential").pi
}

fn tqft(genus: usize, parity: u8, order: usize) -> Vec<BigInt> {
    laplace_to_periods(&trace_formula(genus, parity, order).unwrap()).unwrap()
}

/// Oracle: even entries of a sequence given by its values at `0, 2, 4, ...`.
fn even_sequence(values: &[i64]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); 2 * values.len() - 1];
    for (n, &v) in values.iter().enumerate() {
        out[2 * n] = BigInt::from(v);
    }
    out
}

fn genus_two(parity: u8, graph: ColoredGraph, expect: Vec<BigInt>) -> Check {
    let (b, tb) = timed(|| brute(&graph, 12));
    let (t, tt) = timed(|| tqft(2, parity, 12));
    ensure!(b == expect, "brute {b:?}");
    ensure!(t == expect, "tqft {t:?}");
    ensure!(tb < Duration::from_secs(1), "brute took {tb:?}");
    ensure!(tt < Duration::from_secs(1), "tqft took {tt:?}");
    Ok(format!("brute {tb:.2?}, tqft {tt:.2?}"))
}

fn c1_genus_two_odd() -> Check {
    let expect = even_sequence(&[1, 8, 216, 8000, 343000, 16003008, 788889024]);
    genus_two(1, ColoredGraph::theta([0, 1]), expect)
}

fn c2_genus_two_even() -> Check {
    let mut expect = vec![BigInt::zero(); 13];
    for (k, v) in [(0, 1), (4, 384), (8, 645120), (12, 1513881600i64)] {
        expect[k] = BigInt::from(v);
    }
    genus_two(0, ColoredGraph::theta([0, 0]), expect)
}

fn c3_closed_form() -> Check {
    let pi = tqft(2, 1, 16);
    for n in 0..=8usize {
        let f = factorial(n);
        let expect = (factorial(2 * n) / (&f * &f)).pow(3);
        ensure!(pi[2 * n] == expect, "n = {n}: {} vs {expect}", pi[2 * n]);
        ensure!(&pi[2 * n] * f.pow(6) == factorial(2 * n).pow(3), "n = {n}");
    }
    Ok("n = 0..8".into())
}

/// One coloring per parity: all zero, or vertex `1` colored.
fn with_parity(g: &ColoredGraph, parity: u8) -> ColoredGraph {
    let mut g = g.clone();
    g.vertices[0].color = parity;
    g
}

fn c4_genus_three_oracle() -> Check {
    let graphs = enumerate_trivalent(3).map_err(|e| e.to_string())?;
    ensure!(graphs.len() == 5, "{} isomorphism classes", graphs.len());
    let mut slowest = Duration::ZERO;
    let mut slowest_tqft = Duration::ZERO;
    for parity in [0, 1] {
        let (t, tt) = timed(|| tqft(3, parity, 8));
        ensure!(tt < Duration::from_secs(1), "tqft took {tt:?}");
        slowest_tqft = slowest_tqft.max(tt);
        for g in &graphs {
            let (b, tb) = timed(|| brute(&with_parity(g, parity), 8));
            ensure!(b == t, "parity {parity}: brute {b:?} tqft {t:?} for {}", g.to_json());
            ensure!(tb <= Duration::from_secs(60), "brute took {tb:?}");
            slowest = slowest.max(tb);
        }
    }
    Ok(format!("5 classes x 2 parities, slowest brute {slowest:.2?}, tqft {slowest_tqft:.2?}"))
}

fn normalized_colorings(g: &ColoredGraph) -> Vec<ColoredGraph> {
    let n = g.vertices.len();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0..1u32 << n {
        let mut h = g.clone();
        for (i, v) in h.vertices.iter_mut().enumerate() {
            v.color = (mask >> i & 1) as u8;
        }
        let (norm, _) = normalize_coloring(&h).unwrap();
        let key: Vec<u8> = norm.vertices.iter().map(|v| v.color).collect();
        if seen.insert(key) {
            out.push(norm);
        }
    }
    out
}

fn c5_mutation_suite() -> Check {
    let mut cases = 0;
    for genus in [2, 3] {
        for g in enumerate_trivalent(genus).map_err(|e| e.to_string())? {
            for h in normalized_colorings(&g) {
                let b = graph_potential(&h).map_err(|e| e.to_string())?;
                let periods = periods_bruteforce(&b.potential, 8).unwrap().pi;
                for e in h.edges.iter().filter(|e| !e.is_loop()) {
                    let cert = mu_nu_factors(&b, &e.id).map_err(|e| e.to_string())?;
                    ensure!(cert.product_identity_checked, "mu*nu at {} of {}", e.id, h.to_json());
                    ensure!(verify_mutation(&b, &e.id).unwrap(), "verify at {}", e.id);
                    let (b2, _) = mutate(&b, &e.id).map_err(|e| e.to_string())?;
                    let p2 = periods_bruteforce(&b2.potential, 8).unwrap().pi;
                    ensure!(p2 == periods, "periods differ after mutating {}", e.id);
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} (graph, coloring, edge) cases"))
}

fn c6_theta_dumbbell() -> Check {
    for colors in [[0, 0], [0, 1]] {
        let theta = ColoredGraph::theta(colors);
        let dumbbell = ColoredGraph::dumbbell(colors);
        let d = elementary_transformation(&theta, "b").unwrap();
        ensure!(is_isomorphic(&d, &dumbbell).unwrap(), "theta at b is not a dumbbell");
        let t = elementary_transformation(&dumbbell, "a").unwrap();
        ensure!(is_isomorphic(&t, &theta).unwrap(), "dumbbell at a is not a theta");
        ensure!(brute(&theta, 12) == brute(&dumbbell, 12), "periods differ for {colors:?}");
    }
    Ok("both parities, K = 12".into())
}

/// Oracle: `B(t u) B(t v)` expanded directly for Laurent monomial sums `u`, `v`.
fn bessel_product(u: &LaurentPoly, v: &LaurentPoly, order: usize) -> TSeries<LaurentPoly> {
    let b = bessel(order);
    let lift = |p: &LaurentPoly| {
        let coeffs = b
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| p.pow(k as u32).scalar_mul(c))
            .collect();
        TSeries::from_coeffs(coeffs).unwrap()
    };
    lift(u).mul(&lift(v)).unwrap()
}

fn c7_kernel_identity() -> Check {
    let vars = VarList::new(["x", "y"]);
    let x = LaurentPoly::var(&vars, "x").unwrap();
    let y = LaurentPoly::var(&vars, "y").unwrap();
    let xi = x.monomial_pow(-1).unwrap();
    let yi = y.monomial_pow(-1).unwrap();
    for parity in [0u8, 1] {
        let g = ColoredGraph::open_necklace(&[0, parity]).unwrap();
        let state = k_state(&g, 8).unwrap();
        let expect = if parity == 1 {
            bessel_product(&x.add(&yi).unwrap(), &xi.add(&y).unwrap(), 8)
        } else {
            bessel_product(&x.add(&y).unwrap(), &xi.add(&yi).unwrap(), 8)
        };
        ensure!(state.value == expect, "parity {parity}: state differs from Bessel product");
        let closed = glue(&state, "x", "y").unwrap().scalar().unwrap();
        ensure!(closed == trace_formula(2, parity, 8).unwrap(), "glue differs, parity {parity}");
    }
    Ok("both parities through t^8".into())
}

fn c8_wdvv() -> Check {
    let (ok, took) = timed(|| {
        let both = wdvv_check(0, 6).unwrap() && wdvv_check(1, 6).unwrap();
        let broken = |v: &VarList, s: [&str; 3]| {
            let w = vertex_potential(v, s, 0)?;
            let first = w.terms().keys().next().cloned().unwrap();
            Ok(w.filter_terms(|e| e != first.as_slice()))
        };
        (both, wdvv_check_with(broken, 6).unwrap())
    });
    ensure!(ok.0, "WDVV symmetry fails for the vertex potential");
    ensure!(!ok.1, "corrupted potential passes the WDVV check");
    ensure!(took < Duration::from_secs(30), "took {took:?}");
    Ok(format!("{took:.2?}"))
}

fn c9_operator_identities() -> Check {
    let d = 12usize;
    let a = KernelMatrix::t1_kernel(d);
    let s = KernelMatrix::flip_operator(d);
    ensure!(s.matmul(&s).unwrap() == KernelMatrix::identity(d), "S^2 != I");
    ensure!(a.matmul(&s).unwrap() == s.matmul(&a).unwrap(), "AS != SA");
    ensure!(a.transpose() == a, "A not symmetric");
    ensure!(a.flip_rows().flip_cols() == a, "A not flip-invariant");
    let di = d as i64;
    for i in -di..=di {
        for j in -di..=di {
            for k in 0..=d {
                let c = a.coeff(i, j, k);
                let allowed = i.abs() <= k as i64 && j.abs() <= k as i64 && (i + j) % 2 == 0 && k % 2 == 0;
                ensure!(allowed || c.is_zero(), "entry ({i},{j}) at t^{k} is {c}");
            }
        }
    }
    Ok(format!("D = {d}"))
}

fn c10_integrality() -> Check {
    for (g, e, s) in trace_table(10, 16) {
        laplace_to_periods(&s).map_err(|err| format!("g = {g}, parity = {e}: {err}"))?;
    }
    Ok("g = 2..10, both parities, k <= 16".into())
}

fn c11_table_timing() -> Check {
    let (rows, took) = timed(|| trace_table(10, 16));
    ensure!(rows.len() == 18, "{} columns", rows.len());
    ensure!(took < Duration::from_secs(60), "took {took:?}");
    ensure!(rows.iter().all(|(_, _, s)| *s.coeff(0) == BigRational::one()), "pi_0 != 1");
    Ok(format!("{took:.2?}"))
}

fn c12_grassmannian() -> Check {
    let g = ColoredGraph {
        vertices: vec![Vertex { id: "v".into(), color: 0 }],
        edges: vec![],
        leaves: ["X", "Y", "Z"]
            .iter()
            .map(|n| Leaf { id: n.to_string(), vertex: "v".into(), orientation: Orientation::Out })
            .collect(),
    };
    let dist = [("v".to_string(), "X".to_string())].into();
    let p = grassmannian_limit(&g, &dist).unwrap();
    let vars = VarList::new(["X", "Y", "Z"]);
    let mono = |e: [i32; 3]| LaurentPoly::monomial(&vars, e.to_vec(), BigRational::one()).unwrap();
    let expect = mono([-1, 1, 1]).add(&mono([1, 1, -1])).unwrap().add(&mono([1, -1, 1])).unwrap();
    ensure!(p == expect, "got {p}");
    Ok(format!("{p}"))
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 12] = [
        ("genus-2 odd-parity periods", c1_genus_two_odd),
        ("genus-2 even-parity periods", c2_genus_two_even),
        ("genus-2 closed form", c3_closed_form),
        ("genus-3 oracle equivalence", c4_genus_three_oracle),
        ("mutation suite", c5_mutation_suite),
        ("theta <-> dumbbell", c6_theta_dumbbell),
        ("kernel identity and glue", c7_kernel_identity),
        ("WDVV", c8_wdvv),
        ("operator identities", c9_operator_identities),
        ("integrality", c10_integrality),
        ("table timing", c11_table_timing),
        ("Grassmannian limit", c12_grassmannian),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let (result, took) = timed(|| catch_unwind(AssertUnwindSafe(check)));
        let line = match result {
            Ok(Ok(detail)) => format!("PASS {:>2} {name}: {detail} [{took:.2?}]", n + 1),
            Ok(Err(why)) => {
                failed += 1;
                format!("FAIL {:>2} {name}: {why}", n + 1)
            }
            Err(_) => {
                failed += 1;
                format!("FAIL {:>2} {name}: panicked", n + 1)
            }
        };
        println!("{line}");
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
