//! The smallest Grothendieck-Teichmueller class: the complete graph on four
//! vertices, summed over its edge directions, is a nontrivial degree-zero
//! cocycle of the wheeled one-colour complex with d = 2.

use gcomplex::cohomology::{delta0_matrix, gc_basis};
use gcomplex::element::{GcParams, GCElement};
use gcomplex::ops::{delta0, tetrahedron_class};
use linalg::{in_span, q_int, Q};
use num::Zero;

#[test]
fn tetrahedron_certificate() {
    let params = GcParams::new(2, 0, -1);
    let tetra = tetrahedron_class(params).unwrap();
    assert!(!tetra.is_zero());
    assert_eq!(tetra.degree().unwrap(), 0);
    for (g, _) in tetra.terms() {
        assert_eq!(g.gc_degree(2), 0);
    }
    // closed
    let dx = delta0(&tetra).unwrap();
    assert!(dx.is_zero(), "delta0(tetrahedron) must vanish");
    // not exact: the class is not in the image of delta0 from (V=3, E=5)
    let below = gc_basis(params, 3, 3).unwrap();
    let here = gc_basis(params, 4, 3).unwrap();
    assert!(!here.is_empty());
    let m = delta0_matrix(params, &below, &here).unwrap();
    let index: std::collections::BTreeMap<Vec<u8>, usize> = here
        .iter()
        .enumerate()
        .map(|(i, g)| (g.encode(), i))
        .collect();
    let mut v = vec![Q::zero(); here.len()];
    for (g, c) in tetra.terms() {
        v[index[&g.encode()]] = c.clone();
    }
    let img = m.transpose();
    assert!(
        !in_span(&v, &img).unwrap(),
        "the tetrahedron class must not be exact"
    );
}

#[test]
fn delta0_squares_to_zero_on_a_window() {
    for d in [2i64, 3] {
        for (k, l) in [(0u8, 0i8), (0, -1), (1, 1)] {
            let params = GcParams::new(d, k, l);
            for b in 1..=2i64 {
                for v in 1..=3usize {
                    for g in gc_basis(params, v, b).unwrap() {
                        let x = GCElement::from_graph(params, &g, q_int(1)).unwrap();
                        let ddx = delta0(&delta0(&x).unwrap()).unwrap();
                        assert!(
                            ddx.is_zero(),
                            "d0^2 != 0 at d={d} k={k} l={l} V={v} b={b}"
                        );
                    }
                }
            }
        }
    }
}
