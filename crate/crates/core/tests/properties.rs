use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use linset::arith;
use linset::bounds;
use linset::constructions;
use linset::fields::{Fe, FieldTower};
use linset::linset::{self as ls, Ambient, FqSubspace, SubspaceRecord};
use linset::oracle::{self, OracleConfig};
use linset::projgeo::{self, ProjSubspace};

/// Small ambients whose rank-k subspaces can be enumerated outright.
fn ambient(choice: usize) -> (Ambient, usize) {
    let (p, degrees, d, max_k): (u32, &[usize], usize, usize) = match choice % 6 {
        0 => (2, &[1, 3], 1, 6),
        1 => (2, &[1, 4], 2, 9),
        2 => (3, &[1, 2], 2, 6),
        3 => (3, &[1, 3], 1, 6),
        4 => (2, &[1, 2, 4], 1, 4),
        _ => (5, &[1, 2], 1, 4),
    };
    let t = FieldTower::new(p, degrees).unwrap();
    let base = if degrees.len() == 3 { 2 } else { 1 };
    (Ambient::new(t, base, d).unwrap(), max_k)
}

fn subspace() -> impl Strategy<Value = FqSubspace> {
    (0usize..6, 1usize..10, any::<u64>()).prop_map(|(c, k, seed)| {
        let (amb, max_k) = ambient(c);
        oracle::random_subspace(&amb, 1 + (k - 1) % max_k, seed).unwrap()
    })
}

fn random_matrix(t: &Arc<FieldTower>, dim: usize, seed: u64) -> Vec<Vec<Fe>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..dim).map(|_| (0..dim).map(|_| t.element(rng.gen_range(0..t.order()))).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fast_report_matches_oracle(u in subspace()) {
        let fast = ls::report(&u).unwrap();
        let slow = oracle::exhaustive_report(&u, &OracleConfig::default()).unwrap();
        prop_assert_eq!(&fast.distribution, &slow.distribution);
        prop_assert_eq!(fast.size, slow.size);
        prop_assert_eq!(&fast.spectrum, &slow.spectrum);
        let mut a: Vec<_> = fast.points.iter().map(|w| (w.point.clone(), w.weight)).collect();
        let mut b: Vec<_> = slow.points.iter().map(|w| (w.point.clone(), w.weight)).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn counting_identities(u in subspace()) {
        let r = ls::report(&u).unwrap();
        let q = u.ambient().q();
        prop_assert!(r.identities.all());
        prop_assert_eq!(r.distribution.iter().sum::<u64>(), r.size);
        let weighted: u128 = r.distribution.iter().enumerate().map(|(i, &c)| c as u128 * arith::gaussian_count(q, i + 1)).sum();
        prop_assert_eq!(weighted, arith::gaussian_count(q, u.rank()));
        prop_assert_eq!(r.size % q, 1);
        prop_assert!(r.spectrum.iter().all(|&w| w >= 1 && w <= u.rank().min(u.ambient().n())));
    }

    #[test]
    fn weight_query_agrees_with_report(u in subspace()) {
        let r = ls::report(&u).unwrap();
        for wp in r.points.iter().take(12) {
            prop_assert_eq!(ls::weight(&u, &wp.point).unwrap(), wp.weight);
        }
    }

    #[test]
    fn rank_recovered_from_size(u in subspace()) {
        let r = ls::report(&u).unwrap();
        let q = u.ambient().q();
        let (k, m) = (u.rank(), r.min_weight());
        // The windows for consecutive ranks are disjoint, so a size inside
        // the window of the true rank must give that rank back.
        let lo = arith::pow(q, k - m) + 1;
        let hi = (arith::pow(q, k) - 1) / (arith::pow(q, m) - 1);
        prop_assert!(r.size as u128 <= hi);
        if r.size >= 2 && (lo..=hi).contains(&(r.size as u128)) {
            prop_assert_eq!(bounds::rank_from_size(r.size as u128, m, q).unwrap(), k);
        }
    }

    #[test]
    fn gl_preserves_distribution(u in subspace(), seed in any::<u64>()) {
        let t = u.tower().clone();
        let m = random_matrix(&t, u.ambient().dim(), seed);
        match constructions::apply_gl(&u, &m) {
            Ok(image) => {
                prop_assert_eq!(image.rank(), u.rank());
                prop_assert_eq!(ls::report(&image).unwrap().distribution, ls::report(&u).unwrap().distribution);
            }
            Err(e) => prop_assert!(matches!(e, linset::Error::InvalidInput(_))),
        }
    }

    #[test]
    fn record_round_trip(u in subspace()) {
        let json = serde_json::to_string(&u.record()).unwrap();
        let rec: SubspaceRecord = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(FqSubspace::from_record(&rec, None).unwrap(), u);
    }

    #[test]
    fn projection_and_section_sizes(u in subspace(), pick in any::<prop::sample::Index>()) {
        let r = ls::report(&u).unwrap();
        let t = u.tower().clone();
        let dim = u.ambient().dim();
        let p = &r.points[pick.index(r.points.len())];
        let omega = ProjSubspace::from_points(&t, dim, [&p.point]);
        prop_assert_eq!(ls::weight(&u, &omega).unwrap(), p.weight);
        // Projecting from a point of weight w drops the rank by exactly w.
        if let Some(img) = projgeo::project(&u, &omega).unwrap() {
            prop_assert_eq!(img.rank(), u.rank() - p.weight);
            prop_assert_eq!(projgeo::count_i_omega(&u, &omega).unwrap(), ls::report(&img).unwrap().size);
        }
        let sec = projgeo::section(&u, &omega).unwrap().unwrap();
        prop_assert_eq!(sec.rank(), p.weight);
    }

    #[test]
    fn subgeometry_bound_holds_at_weight_one_points(u in subspace()) {
        let r = ls::report(&u).unwrap();
        let t = u.tower().clone();
        let dim = u.ambient().dim();
        if u.rank() >= 2 {
            for wp in r.points.iter().filter(|w| w.weight == 1).take(4) {
                let omega = ProjSubspace::from_points(&t, dim, [&wp.point]);
                let cert = bounds::verify_subgeometry_bound(&u, &omega).unwrap();
                prop_assert!(cert.slack >= 0);
                prop_assert_eq!(cert.size, r.size);
            }
        }
    }

    #[test]
    fn minimum_weight_spans(u in subspace()) {
        let r = ls::report(&u).unwrap();
        let spans = ProjSubspace::from_points(u.tower(), u.ambient().dim(), r.points.iter().map(|w| &w.point));
        if spans.rank() == u.ambient().dim() {
            prop_assert!(bounds::min_weight_span_check(&u).unwrap());
        }
    }
}

#[test]
fn scalar_multiples_give_the_same_set() {
    let (amb, _) = ambient(1);
    let t = amb.tower().clone();
    let u = oracle::random_subspace(&amb, 5, 7).unwrap();
    let mu = t.element(5);
    let scaled: Vec<Vec<Fe>> = u.basis().iter().map(|v| v.iter().map(|&a| t.mul(mu, a)).collect()).collect();
    let v = FqSubspace::span(&amb, &scaled).unwrap();
    let a = ls::report(&u).unwrap();
    let b = ls::report(&v).unwrap();
    let mut pa: Vec<_> = a.points.iter().map(|w| (w.point.clone(), w.weight)).collect();
    let mut pb: Vec<_> = b.points.iter().map(|w| (w.point.clone(), w.weight)).collect();
    pa.sort();
    pb.sort();
    assert_eq!(pa, pb);
}
