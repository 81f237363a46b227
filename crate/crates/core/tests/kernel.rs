use gpot_core::algebra::{factorial, rat, TSeries};
use gpot_core::graph::ColoredGraph;
use gpot_core::period::laplace_to_periods;
use gpot_core::tqft::{glue, k_state, kernel_compose, necklace_state, trace_formula, KernelMatrix};
use num_rational::BigRational;
use proptest::prelude::*;

fn small_kernel(order: usize) -> impl Strategy<Value = KernelMatrix> {
    let n = (2 * order + 1).pow(2) * (order + 1);
    prop::collection::vec(-3i64..=3, n).prop_map(move |vals| {
        let mut it = vals.into_iter();
        KernelMatrix::from_fn(order, |_, _| {
            let c = (0..=order).map(|_| rat(it.next().unwrap())).collect();
            TSeries::from_coeffs(c).unwrap()
        })
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn composition_is_associative(a in small_kernel(2), b in small_kernel(2), c in small_kernel(2)) {
        let ab_c = kernel_compose(&kernel_compose(&a, &b).unwrap(), &c).unwrap();
        let a_bc = kernel_compose(&a, &kernel_compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(kernel_compose(&a, &KernelMatrix::identity(2)).unwrap(), a.clone());
    }
}

#[test]
fn orientation_flips_of_t1() {
    let a = KernelMatrix::t1_kernel(10);
    // T1(1/x, 1/y) = T1(x, y) and T1(x, 1/y) = T1(1/x, y)
    assert_eq!(a.flip_rows().flip_cols(), a);
    assert_eq!(a.flip_cols(), a.flip_rows());
}

#[test]
fn second_kernel_is_a_squared_times_flip() {
    let a = KernelMatrix::t1_kernel(8);
    let s = KernelMatrix::flip_operator(8);
    let t2 = a.convolve(&a).unwrap();
    assert_eq!(t2, a.matmul(&a).unwrap().matmul(&s).unwrap());
    let brute = k_state(&ColoredGraph::open_necklace(&[0, 0, 0, 0]).unwrap(), 8).unwrap();
    assert_eq!(brute.value, t2.to_series("x", "y").unwrap());
}

#[test]
fn necklace_states_glue_to_traces() {
    for genus in 2..=6 {
        for parity in [0, 1] {
            let s = glue(&necklace_state(genus - 1, parity, 10).unwrap(), "x", "y").unwrap();
            assert_eq!(s.scalar().unwrap(), trace_formula(genus, parity, 10).unwrap());
        }
    }
}

#[test]
fn cut_open_theta_reglues() {
    // both orientation-consistent gluings of the one-bead necklace agree
    for parity in [0, 1] {
        let s = k_state(&ColoredGraph::open_necklace(&[0, parity]).unwrap(), 8).unwrap();
        let closed = k_state(&ColoredGraph::theta([0, parity]), 8).unwrap();
        assert_eq!(glue(&s, "x", "y").unwrap(), glue(&s, "y", "x").unwrap());
        assert_eq!(glue(&s, "x", "y").unwrap().scalar(), closed.scalar());
    }
}

#[test]
fn genus_two_even_parity_closed_form() {
    // tr(A S) for g = 2, parity 0: sum (2t)^(4m) / (m!)^4
    let t = trace_formula(2, 0, 16).unwrap();
    for k in 0..=16usize {
        let expect = if k % 4 == 0 {
            let m = k / 4;
            let f = factorial(m);
            BigRational::new(num_bigint::BigInt::from(2).pow(k as u32), f.pow(4))
        } else {
            rat(0)
        };
        assert_eq!(t.coeff(k), &expect, "k = {k}");
    }
    let pi = laplace_to_periods(&t).unwrap();
    assert_eq!(pi[4], 384.into());
}
