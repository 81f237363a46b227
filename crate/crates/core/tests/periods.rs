use std::collections::BTreeMap;

use gpot_core::graph::{elementary_transformation, enumerate_trivalent, ColoredGraph};
use gpot_core::mutation::mutate;
use gpot_core::period::{periods_bruteforce, periods_of_graph, Method};
use gpot_core::potential::graph_potential;
use gpot_core::Error;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

fn brute(g: &ColoredGraph, order: usize) -> Vec<BigInt> {
    periods_bruteforce(&graph_potential(g).unwrap().potential, order).unwrap().pi
}

#[test]
fn periods_depend_only_on_genus_and_parity() {
    let mut seen: BTreeMap<(usize, u8), Vec<BigInt>> = BTreeMap::new();
    for genus in [2, 3] {
        for g in enumerate_trivalent(genus).unwrap() {
            for mask in 0..1u32 << g.vertices.len() {
                let mut h = g.clone();
                for (i, v) in h.vertices.iter_mut().enumerate() {
                    v.color = (mask >> i & 1) as u8;
                }
                let pi = brute(&h, 8);
                assert!(pi.iter().all(|p| !p.is_negative()));
                assert!(pi.iter().skip(1).step_by(2).all(Zero::is_zero));
                let entry = seen.entry((genus, h.parity())).or_insert_with(|| pi.clone());
                assert_eq!(*entry, pi, "genus {genus} {}", h.to_json());
            }
        }
    }
    assert_eq!(seen.len(), 4);
}

#[test]
fn mutating_back_keeps_periods() {
    let g = ColoredGraph::theta([0, 1]);
    let b = graph_potential(&g).unwrap();
    let (b2, _) = mutate(&b, "b").unwrap();
    let (b3, _) = mutate(&b2, "b").unwrap();
    let p = |b: &gpot_core::potential::PotentialBundle| periods_bruteforce(&b.potential, 10).unwrap().pi;
    assert_eq!(p(&b), p(&b2));
    assert_eq!(p(&b), p(&b3));
}

#[test]
fn methods_agree_on_genus_three() {
    for g in enumerate_trivalent(3).unwrap() {
        for parity in [0, 1] {
            let mut h = g.clone();
            h.vertices[1].color = parity;
            periods_of_graph(&h, 8, Method::Both).unwrap();
        }
    }
}

#[test]
fn tqft_rejects_open_graphs() {
    let g = ColoredGraph::open_necklace(&[0, 1]).unwrap();
    assert!(matches!(periods_of_graph(&g, 4, Method::Tqft), Err(Error::Unsupported(_))));
    assert!(periods_of_graph(&g, 4, Method::Brute).is_ok());
}

#[test]
fn transformation_preserves_periods_along_a_chain() {
    let mut g = enumerate_trivalent(3).unwrap()[0].clone();
    g.vertices[2].color = 1;
    let reference = brute(&g, 8);
    for _ in 0..4 {
        let e = g.edges.iter().find(|e| !e.is_loop()).unwrap().id.clone();
        g = elementary_transformation(&g, &e).unwrap();
        assert_eq!(brute(&g, 8), reference);
    }
}
