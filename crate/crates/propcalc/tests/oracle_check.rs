//! Independent oracles for the differential and the graft calculus: the
//! explicit 2-oriented arity-expansion of the associative differential, the
//! Leibniz rule, and order-independence of nested grafting.

use graphcore::OrientWord;
use linalg::q_int;
use propcalc::dec::{
    graft_raw, Combination, DecEdge, DecGraph, DecLeg, ExtLeg, Side, Slot,
};
use propcalc::delta::{delta, delta_on_graph};
use propcalc::family::{corolla_graph, distinct_corollas, Corolla, Family};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn al() -> OrientWord {
    OrientWord::parse_pm("+").unwrap()
}

fn an() -> OrientWord {
    OrientWord::parse_pm("-").unwrap()
}

/// Builds an operadic 2-vertex tree: upper vertex 0 with output `o0`, lower
/// vertex 1 feeding the upper input slot `edge_slot`; input slot `j` of the
/// assembled tree reads from `labels`.
fn tree2(
    family: Family,
    upper: &Corolla,
    lower: &Corolla,
    edge_slot: u8,
    upper_labels: &[u8],
    lower_labels: &[u8],
) -> DecGraph {
    let mut legs = vec![DecLeg {
        vertex: 0,
        slot: Slot {
            side: Side::Out,
            pos: 0,
        },
        label: ExtLeg::o(0),
    }];
    let mut ui = upper_labels.iter();
    for pos in 0..upper.n() as u8 {
        if pos == edge_slot {
            continue;
        }
        legs.push(DecLeg {
            vertex: 0,
            slot: Slot {
                side: Side::In,
                pos,
            },
            label: ExtLeg::i(*ui.next().unwrap()),
        });
    }
    for (pos, lab) in lower_labels.iter().enumerate() {
        legs.push(DecLeg {
            vertex: 1,
            slot: Slot {
                side: Side::In,
                pos: pos as u8,
            },
            label: ExtLeg::i(*lab),
        });
    }
    legs.sort_by_key(|l| l.label);
    DecGraph {
        k: family.k(),
        vertices: vec![upper.clone(), lower.clone()],
        edges: vec![DecEdge {
            from_vertex: 1,
            from_pos: 0,
            to_vertex: 0,
            to_pos: edge_slot,
        }],
        legs,
    }
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The explicit 2-oriented differential of an aligned-output special corolla
/// with `p` aligned inputs followed by `q` reversed inputs, written as the
/// three displayed summations over decompositions into connected blocks.
fn delta_ass2_explicit(p: usize, q: usize) -> Combination {
    let f = Family::AssInf { k: 1 };
    let n = p + q;
    let mut out = Combination::zero(1);
    let mut push = |g: DecGraph, s: i64| {
        out.add_graph(&g, q_int(s)).unwrap();
    };
    // first display: the lower vertex swallows a connected block of aligned
    // inputs, the edge is aligned
    for i1 in 0..=p {
        for i2 in 2..=(p - i1) {
            let i3 = p - i1 - i2;
            let upper_words: Vec<OrientWord> = std::iter::repeat(al())
                .take(i1)
                .chain(std::iter::once(al()))
                .chain(std::iter::repeat(al()).take(i3))
                .chain(std::iter::repeat(an()).take(q))
                .collect();
            let upper = Corolla::new(f, vec![al()], upper_words);
            let lower = Corolla::new(f, vec![al()], vec![al(); i2]);
            if !upper.is_valid() || !lower.is_valid() {
                continue;
            }
            let upper_labels: Vec<u8> = (0..i1 as u8)
                .chain((i1 + i2) as u8..n as u8)
                .collect();
            let lower_labels: Vec<u8> = (i1 as u8..(i1 + i2) as u8).collect();
            let g = tree2(f, &upper, &lower, i1 as u8, &upper_labels, &lower_labels);
            push(g, sign((i1 * i2 + i3 + q + 1) as i64));
        }
    }
    // second display: the lower vertex swallows a connected block of
    // reversed inputs, the edge is reversed
    for j1 in 0..=q {
        for j2 in 2..=(q - j1) {
            let j3 = q - j1 - j2;
            let upper_words: Vec<OrientWord> = std::iter::repeat(al())
                .take(p)
                .chain(std::iter::repeat(an()).take(j1))
                .chain(std::iter::once(an()))
                .chain(std::iter::repeat(an()).take(j3))
                .collect();
            let upper = Corolla::new(f, vec![al()], upper_words);
            let lower = Corolla::new(f, vec![an()], vec![an(); j2]);
            if !upper.is_valid() || !lower.is_valid() {
                continue;
            }
            let upper_labels: Vec<u8> = (0..(p + j1) as u8)
                .chain((p + j1 + j2) as u8..n as u8)
                .collect();
            let lower_labels: Vec<u8> =
                ((p + j1) as u8..(p + j1 + j2) as u8).collect();
            let g = tree2(
                f,
                &upper,
                &lower,
                (p + j1) as u8,
                &upper_labels,
                &lower_labels,
            );
            push(g, sign(((p + j1) * j2 + j3 + 1) as i64));
        }
    }
    // third display: the lower vertex straddles the block boundary; both
    // edge words occur
    for i1 in 0..=p {
        let i2 = p - i1;
        for j2 in 0..=q {
            let j1 = q - j2;
            if i2 + j1 < 2 || i2 == 0 || j1 == 0 {
                continue;
            }
            for e_word in [al(), an()] {
                let upper_words: Vec<OrientWord> = std::iter::repeat(al())
                    .take(i1)
                    .chain(std::iter::once(e_word))
                    .chain(std::iter::repeat(an()).take(j2))
                    .collect();
                let upper = Corolla::new(f, vec![al()], upper_words);
                let lower_words: Vec<OrientWord> = std::iter::repeat(al())
                    .take(i2)
                    .chain(std::iter::repeat(an()).take(j1))
                    .collect();
                let lower = Corolla::new(f, vec![e_word], lower_words);
                if !upper.is_valid() || !lower.is_valid() {
                    continue;
                }
                let upper_labels: Vec<u8> = (0..i1 as u8)
                    .chain((i1 + i2 + j1) as u8..n as u8)
                    .collect();
                let lower_labels: Vec<u8> =
                    (i1 as u8..(i1 + i2 + j1) as u8).collect();
                let g = tree2(f, &upper, &lower, i1 as u8, &upper_labels, &lower_labels);
                push(g, sign((i1 * (i2 + j1) + j2 + 1) as i64));
            }
        }
    }
    out
}

/// The general-formula differential must agree with the explicit arity
/// expansion on every aligned-output special corolla of arity 3 and 4.
#[test]
fn ass2_differential_matches_explicit_expansion() {
    for n in [3usize, 4] {
        for p in 0..=n {
            let q = n - p;
            let words: Vec<OrientWord> = std::iter::repeat(al())
                .take(p)
                .chain(std::iter::repeat(an()).take(q))
                .collect();
            let c = Corolla::new(Family::AssInf { k: 1 }, vec![al()], words);
            if !c.is_valid() {
                continue;
            }
            let general = delta(&c).unwrap();
            let explicit = delta_ass2_explicit(p, q);
            let mut diff = general.clone();
            diff.add(&explicit.scaled(&q_int(-1)));
            assert!(
                diff.is_zero(),
                "mismatch at p={p}, q={q}: general {} terms, explicit {} terms",
                general.len(),
                explicit.len()
            );
        }
    }
}

fn random_corolla(rng: &mut ChaCha8Rng, family: Family, max_n: usize) -> Corolla {
    loop {
        let n = rng.gen_range(2..=max_n);
        let all = distinct_corollas(family, 1, n);
        if all.is_empty() {
            continue;
        }
        return all[rng.gen_range(0..all.len())].clone();
    }
}

fn relabel(g: &DecGraph, out_base: u8, in_base: u8) -> DecGraph {
    let mut h = g.clone();
    for l in &mut h.legs {
        l.label = if l.label.out {
            ExtLeg::o(out_base + l.label.idx)
        } else {
            ExtLeg::i(in_base + l.label.idx)
        };
    }
    h.legs.sort_by_key(|l| l.label);
    h
}

/// The differential is a derivation for grafting: d(a o b) = da o b
/// (+/-) a o db, term by term over canonical classes.
#[test]
fn leibniz_over_graft() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for family in [Family::AssInf { k: 1 }, Family::LieInf { k: 1 }] {
        for _ in 0..20 {
            let a = random_corolla(&mut rng, family, 4);
            let b = random_corolla(&mut rng, family, 4);
            let ga = corolla_graph(&a).unwrap();
            let gb = relabel(&corolla_graph(&b).unwrap(), 40, 40);
            // graft b's output into a random input of a
            let slot = rng.gen_range(0..a.n()) as u8;
            if a.in_words[slot as usize] != b.out_words[0] {
                continue;
            }
            let glued = graft_raw(
                &ga,
                &gb,
                &[(ExtLeg::i(slot), ExtLeg::o(40))],
                family.k() as i8,
            )
            .unwrap();
            let lhs = delta_on_graph(&glued).unwrap();
            // rhs: delta(a) grafted with b, plus (-1)^{deg a} a grafted with
            // delta(b)
            let mut rhs = Combination::zero(family.k());
            for (t, coeff) in delta(&a).unwrap().terms() {
                let tg = graft_raw(t, &gb, &[(ExtLeg::i(slot), ExtLeg::o(40))], family.k() as i8)
                    .unwrap();
                rhs.add_graph(&tg, coeff.clone()).unwrap();
            }
            let sgn = if a.degree().rem_euclid(2) == 0 { 1 } else { -1 };
            for (t, coeff) in delta(&b).unwrap().terms() {
                let tg = relabel(t, 40, 40);
                let tg = graft_raw(&ga, &tg, &[(ExtLeg::i(slot), ExtLeg::o(40))], family.k() as i8)
                    .unwrap();
                rhs.add_graph(&tg, coeff.clone() * q_int(sgn)).unwrap();
            }
            let mut diff = lhs.clone();
            diff.add(&rhs.scaled(&q_int(-1)));
            assert!(diff.is_zero(), "Leibniz failure for {family:?}");
        }
    }
}

/// Nested admissible graftings commute: grafting c below b below a gives the
/// same combination whichever pair is glued first.
#[test]
fn graft_order_independence() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for family in [
        Family::AssInf { k: 1 },
        Family::LieInf { k: 1 },
        Family::Ass { k: 0 },
    ] {
        let mut tested = 0;
        while tested < 25 {
            let a = random_corolla(&mut rng, family, 4);
            let b = random_corolla(&mut rng, family, 3);
            let c = random_corolla(&mut rng, family, 3);
            let ga = corolla_graph(&a).unwrap();
            let gb = relabel(&corolla_graph(&b).unwrap(), 40, 40);
            let gc = relabel(&corolla_graph(&c).unwrap(), 80, 80);
            let sa = rng.gen_range(0..a.n()) as u8;
            let sb = rng.gen_range(0..b.n()) as u8;
            if a.in_words[sa as usize] != b.out_words[0]
                || b.in_words[sb as usize] != c.out_words[0]
            {
                continue;
            }
            tested += 1;
            let l = family.k() as i8;
            // ((a o b) o c)
            let ab = graft_raw(&ga, &gb, &[(ExtLeg::i(sa), ExtLeg::o(40))], l).unwrap();
            let abc1 = graft_raw(&ab, &gc, &[(ExtLeg::i(40 + sb), ExtLeg::o(80))], l).unwrap();
            // (a o (b o c))
            let bc = graft_raw(&gb, &gc, &[(ExtLeg::i(40 + sb), ExtLeg::o(80))], l).unwrap();
            let abc2 = graft_raw(&ga, &bc, &[(ExtLeg::i(sa), ExtLeg::o(40))], l).unwrap();
            let c1 = Combination::from_graph(&abc1, q_int(1)).unwrap();
            let c2 = Combination::from_graph(&abc2, q_int(1)).unwrap();
            let mut diff = c1.clone();
            diff.add(&c2.scaled(&q_int(-1)));
            assert!(diff.is_zero(), "graft associativity failure for {family:?}");
        }
    }
}

/// Horizontal composition (grafting along no legs) of even-degree elements
/// carries sign +1.
#[test]
fn horizontal_composition_of_even_generators() {
    let a = Corolla::new(Family::HoLB { c: 1, d: 1, k: 0 }, vec![al(); 0], vec![]);
    let _ = a; // HoLB corollas need legs; use binary Lie generators instead
    let c = Corolla::new(
        Family::Lie { k: 0 },
        vec![OrientWord::parse_pm("").unwrap()],
        vec![
            OrientWord::parse_pm("").unwrap(),
            OrientWord::parse_pm("").unwrap(),
        ],
    );
    let g1 = corolla_graph(&c).unwrap();
    let g2 = relabel(&g1, 40, 40);
    let disjoint = graft_raw(&g1, &g2, &[], 0).unwrap();
    let comb = Combination::from_graph(&disjoint, q_int(1)).unwrap();
    assert_eq!(comb.len(), 1);
    let (_, coeff) = comb.terms().next().unwrap();
    assert_eq!(coeff, &q_int(1));
}

/// d squared vanishes on every generator within the small window used by the
/// unit suite (the full acceptance window is exercised by the CLI tests).
#[test]
fn d_squared_small_window() {
    for family in [
        Family::AssInf { k: 1 },
        Family::LieInf { k: 1 },
        Family::HoLB { c: 1, d: 1, k: 1 },
    ] {
        let report = propcalc::delta::verify_d_squared(family, 4).unwrap();
        assert!(report.all_zero(), "{family:?}: {:?}", report.residuals);
        assert!(report.checked > 0);
    }
}
