use std::collections::{BTreeSet, VecDeque};

use blob_core::diamond::{pi, DiamondWalk};
use blob_core::word::generators;
use blob_core::{enumerate_bn, phi, BlobDiagram, Gen, RingElem, Walk, Word};
use proptest::prelude::*;

fn gen_strategy(n: usize) -> impl Strategy<Value = Gen> {
    (0..n as u32).prop_map(|i| if i == 0 { Gen::E } else { Gen::U(i) })
}

fn word_strategy() -> impl Strategy<Value = (Word, Word)> {
    (1usize..=6).prop_flat_map(|n| {
        (
            prop::collection::vec(gen_strategy(n), 0..10),
            prop::collection::vec(gen_strategy(n), 0..10),
        )
            .prop_map(move |(a, b)| (Word::new(n, a).unwrap(), Word::new(n, b).unwrap()))
    })
}

fn ring_strategy() -> impl Strategy<Value = RingElem> {
    prop::collection::vec((-3i64..=3, -2i32..=2, 0u32..2, 0u32..2), 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(RingElem::zero(), |acc, (c, k, g, d)| {
                let t = &(&RingElem::int(c) * &RingElem::q_pow(k))
                    * &(&RingElem::gamma().pow(g) * &RingElem::delta_e().pow(d));
                &acc + &t
            })
    })
}

fn walk_strategy() -> impl Strategy<Value = Walk> {
    prop::collection::vec(any::<bool>(), 0..12).prop_map(|steps| {
        let mut sigma = vec![0i64];
        for up in steps {
            let last = *sigma.last().unwrap();
            sigma.push(if up { last + 1 } else { last - 1 });
        }
        Walk::new(sigma).unwrap()
    })
}

proptest! {
    #[test]
    fn phi_is_multiplicative((a, b) in word_strategy()) {
        let n = a.n();
        let ab = Word::product(n, [&a, &b]).unwrap();
        prop_assert_eq!(phi(&ab).unwrap(), phi(&a).unwrap().compose(&phi(&b).unwrap()).unwrap());
    }

    #[test]
    fn opposite_is_flip((a, _) in word_strategy()) {
        let x = phi(&a).unwrap();
        let y = phi(&a.opposite()).unwrap();
        prop_assert_eq!(y.diagram, x.diagram.flip());
        prop_assert_eq!(y.coeff, x.coeff);
    }

    #[test]
    fn composition_is_associative(n in 1usize..=4, i in 0usize..70, j in 0usize..70, k in 0usize..70) {
        let all = enumerate_bn(n);
        let (a, b, c) = (&all[i % all.len()], &all[j % all.len()], &all[k % all.len()]);
        let left = a.compose(b).unwrap().compose(&blob_core::ScaledDiagram::unit(c.clone())).unwrap();
        let right = blob_core::ScaledDiagram::unit(a.clone()).compose(&b.compose(c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn ring_laws(a in ring_strategy(), b in ring_strategy(), c in ring_strategy()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        let s = a.to_string();
        prop_assert_eq!(s.parse::<RingElem>().unwrap(), a);
    }

    #[test]
    fn walk_round_trips(p in walk_strategy()) {
        prop_assert_eq!(Walk::from_json(&p.to_json()).unwrap(), p.clone());
        prop_assert_eq!(p.to_string().parse::<Walk>().unwrap(), p.clone());
        let t = pi(&p);
        prop_assert_eq!(t.n(), p.level());
        prop_assert_eq!(DiamondWalk::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn diagrams_round_trip_through_json(n in 1usize..=4, i in 0usize..70) {
        let all = enumerate_bn(n);
        let d = blob_core::ScaledDiagram::unit(all[i % all.len()].clone());
        let back = blob_core::ScaledDiagram::from_json(&d.to_json().to_string()).unwrap();
        prop_assert_eq!(back, d);
    }
}

/// Every diagram is reached from the identity by right multiplication with generators.
#[test]
fn generators_reach_every_diagram() {
    for n in 1..=4 {
        let mut seen = BTreeSet::from([BlobDiagram::identity(n)]);
        let mut queue = VecDeque::from([BlobDiagram::identity(n)]);
        while let Some(d) = queue.pop_front() {
            for g in generators(n) {
                let (next, _) = d
                    .compose_tally(&BlobDiagram::generator(n, g).unwrap())
                    .unwrap();
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let all: BTreeSet<_> = enumerate_bn(n).into_iter().collect();
        assert_eq!(seen, all, "n = {n}");
    }
}
