use butterfly_core::engine::random::{conic_point, random_frame, random_point};
use butterfly_core::engine::{Claim, Instance, Verdict};
use butterfly_core::field::{Field, GaussianRational, PrimeField};
use butterfly_core::projective::{
    cross_ratio, harmonic_conjugate, join, meet, Point, Projectivity,
};
use butterfly_core::scenario::ScenarioFile;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type G = GaussianRational;

fn gauss(re: (i64, i64), im: (i64, i64)) -> G {
    G::ratio(re.0, re.1).add(&G::ratio(im.0, im.1).mul(&G::i()))
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-40i64..=-1, 1i64..=40]
}

fn scalar() -> impl Strategy<Value = G> {
    ((-40i64..=40, nonzero()), (-40i64..=40, nonzero())).prop_map(|(re, im)| gauss(re, im))
}

fn point() -> impl Strategy<Value = Point<G>> {
    [scalar(), scalar(), scalar()].prop_filter_map("zero triple", |c| Point::new(c).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn normalization_keeps_the_point(p in point(), s in scalar()) {
        prop_assume!(!s.is_zero());
        let scaled = Point::new(p.coords().clone().map(|c| c.mul(&s))).unwrap();
        prop_assert_eq!(&scaled, &p);
        prop_assert_eq!(scaled.canonical().to_string(), p.canonical().to_string());
        prop_assert_eq!(Point::<G>::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn join_and_meet_are_incident(a in point(), b in point(), c in point(), d in point()) {
        prop_assume!(a != b && c != d);
        let (l, m) = (join(&a, &b).unwrap(), join(&c, &d).unwrap());
        prop_assume!(l != m);
        let x = meet(&l, &m).unwrap();
        prop_assert!(l.contains(&x) && m.contains(&x));
    }

    #[test]
    fn harmonic_conjugate_is_harmonic(a in point(), b in point(), t in scalar()) {
        prop_assume!(a != b && !t.is_zero());
        let w = a.combine(&G::one(), &b, &t).unwrap();
        let h = harmonic_conjugate(&a, &b, &w).unwrap();
        prop_assert!(cross_ratio(&a, &w, &b, &h).unwrap().is_harmonic());
        prop_assert_eq!(harmonic_conjugate(&a, &b, &h).unwrap(), w);
    }

    #[test]
    fn cross_ratio_is_projectively_invariant(seed in any::<u64>(), t in [scalar(), scalar(), scalar(), scalar()]) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_point::<G, _>(&mut rng, 30, false), random_point::<G, _>(&mut rng, 30, false));
        prop_assume!(a != b);
        let pts: Vec<Point<G>> = t.iter().map(|s| a.combine(&G::one(), &b, s).unwrap()).collect();
        let cr = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]);
        prop_assume!(cr.is_ok());
        let map = Projectivity::random(&mut rng, 30, false);
        let img: Vec<Point<G>> = pts.iter().map(|p| map.apply_point(p)).collect();
        prop_assert_eq!(cross_ratio(&img[0], &img[1], &img[2], &img[3]).unwrap(), cr.unwrap());
    }

    #[test]
    fn reflection_is_a_conic_involution(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some((conic, frame)) = random_frame::<G, _>(&mut rng, 30, false) else {
            return Ok(());
        };
        let y = random_point::<G, _>(&mut rng, 30, false);
        prop_assume!(y != *frame.pole());
        let image = frame.reflect_point(&y).unwrap();
        prop_assert_eq!(frame.reflect_point(&image).unwrap(), y.clone());
        // The harmonic homology oracle (k·p) y - 2 (k·y) p.
        let (k, p) = (frame.axis(), frame.pole());
        let kp = k.eval(p);
        let two_ky = k.eval(&y).add(&k.eval(&y));
        let oracle = y.combine(&kp, p, &two_ky.neg()).unwrap();
        prop_assert_eq!(image, oracle);
        let c = conic_point(&conic, &mut rng, 30, false);
        prop_assert!(frame.conic().contains(&frame.reflect_point(&c).unwrap()));
    }

    #[test]
    fn pole_and_polar_are_inverse(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some((conic, _)) = random_frame::<G, _>(&mut rng, 30, false) else {
            return Ok(());
        };
        let y = random_point::<G, _>(&mut rng, 30, false);
        let c = conic.conic();
        prop_assert_eq!(c.pole(&c.polar(&y)), y);
    }

    #[test]
    fn random_instances_replay_exactly(seed in any::<u64>(), which in 0usize..8) {
        let claim = Claim::ALL[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (inst, report) = Instance::<G>::random(claim, &mut rng, 12, false).unwrap().value;
        prop_assert_eq!(report.verdict, Verdict::Holds);
        let text = ScenarioFile::from_instance(&inst).to_string();
        let file = ScenarioFile::<G>::parse(&text).unwrap();
        prop_assert_eq!(file.to_string(), text);
        let replayed = file.instances().unwrap().remove(0).check().unwrap();
        prop_assert_eq!(replayed.to_string(), report.to_string());
    }

    #[test]
    fn prime_backend_holds(seed in any::<u64>(), which in 0usize..6) {
        let claim = [Claim::Mono, Claim::Jap, Claim::Nut, Claim::Sack, Claim::Pascal, Claim::Damn][which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, report) = Instance::<PrimeField>::random(claim, &mut rng, 0, false).unwrap().value;
        prop_assert_eq!(report.verdict, Verdict::Holds);
    }
}
