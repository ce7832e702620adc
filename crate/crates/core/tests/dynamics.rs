use gnk_core::geometry::{circumcircle, precedes, tangent_circles_through, Circle, Point};
use gnk_core::hom::{f_braid, g_word, h, phi, FConvention, Phi};
use gnk_core::relators::relators_pure_braid;
use gnk_core::solver::{equal, reduce, SolverBudget};
use gnk_core::tracer::{
    braid_trajectory, collinear_events, g_geometric, tangent_events, TraceParams,
};
use gnk_core::trajectory::{
    standard_generator_trajectory, LinkingMatrix, Trajectory, COLLINEAR_SCALE, DISC_SCALE,
};
use gnk_core::{BraidWord, DoublePrimeGenerator, StrandCount, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::TAU;

fn n(k: usize) -> StrandCount {
    StrandCount::new(k).unwrap()
}

fn braid(s: &str) -> BraidWord {
    BraidWord::parse(s).unwrap()
}

#[test]
fn linking_numbers_certify_every_generator() {
    for k in 3..=5 {
        for i in 1..=k {
            for j in i + 1..=k {
                for scale in [COLLINEAR_SCALE, DISC_SCALE] {
                    let t = standard_generator_trajectory(n(k), i, j, scale).unwrap();
                    let l = t.linking_numbers().unwrap();
                    assert_eq!(l, LinkingMatrix::elementary(k, i, j), "n={k} b{i}{j}");
                }
            }
        }
    }
}

#[test]
fn pb3_relations_hold_for_geometric_phi() {
    let p = TraceParams::default();
    for rel in relators_pure_braid(n(3)) {
        let l = Phi(&rel.left, n(3), FConvention::Geometric, &p).unwrap();
        let r = Phi(&rel.right, n(3), FConvention::Geometric, &p).unwrap();
        assert!(
            equal(&l, &r, SolverBudget::default()).unwrap(),
            "{} = {}",
            rel.left,
            rel.right
        );
    }
}

#[test]
fn full_twist_traces_trivially() {
    let p = TraceParams::default();
    let w = Phi(
        &braid("b[1,2] b[1,3] b[2,3]"),
        n(3),
        FConvention::Geometric,
        &p,
    )
    .unwrap();
    assert!(reduce(&w, SolverBudget::default()).unwrap().word.is_empty());
}

// g is a homomorphism out of the prime group, so equal f-images have equal
// g-actions. This checks all PB_4 relations, including the four-index one.
#[test]
fn pb4_relations_agree_under_the_g_action() {
    let p = TraceParams::default();
    let n4 = n(4);
    let act = |w: &BraidWord| g_word(&f_braid(w, n4, FConvention::Geometric, &p).unwrap(), n4);
    for rel in relators_pure_braid(n4) {
        assert_eq!(
            act(&rel.left),
            act(&rel.right),
            "{} = {}",
            rel.left,
            rel.right
        );
    }
    // controls: these are not relations of PB_4
    for (a, b) in [
        ("b[2,4] b[1,3]", "b[1,3] b[2,4]"),
        (
            "b[1,3] b[2,3]^-1 b[2,4] b[2,3]",
            "b[2,3]^-1 b[2,4] b[2,3] b[1,3]",
        ),
    ] {
        assert_ne!(act(&braid(a)), act(&braid(b)), "{a} = {b}");
    }
}

#[test]
fn pb3_relations_hold_for_tangent_invariant() {
    let p = TraceParams::default();
    for rel in relators_pure_braid(n(3)) {
        let l = h(&g_geometric(&rel.left, n(3), &p).unwrap());
        let r = h(&g_geometric(&rel.right, n(3), &p).unwrap());
        assert!(
            equal(&l, &r, SolverBudget::default()).unwrap(),
            "{} = {}",
            rel.left,
            rel.right
        );
    }
}

#[test]
fn event_word_of_concatenation_is_product() {
    let p = TraceParams::default();
    let a = standard_generator_trajectory(n(4), 1, 3, 1.0).unwrap();
    let b = standard_generator_trajectory(n(4), 2, 4, 1.0)
        .unwrap()
        .inverse();
    let ab = collinear_events(&a.concatenate(&b).unwrap(), &p);
    let (ea, eb) = (collinear_events(&a, &p), collinear_events(&b, &p));
    assert!(ab.report.is_good());
    assert_eq!(ab.word, ea.word.concat(&eb.word));
    for (e, x) in ab.events.iter().zip(ea.events.iter()) {
        assert!((e.time - 0.5 * x.time).abs() < 1e-9);
    }
}

#[test]
fn inverse_trajectory_reverses_event_word() {
    let p = TraceParams::default();
    let t = standard_generator_trajectory(n(4), 1, 4, 1.0).unwrap();
    let fw = collinear_events(&t, &p);
    let bw = collinear_events(&t.inverse(), &p);
    assert_eq!(bw.word, fw.word.inverse());
    for (a, b) in fw.events.iter().zip(bw.events.iter().rev()) {
        assert!((a.time - (1.0 - b.time)).abs() < 1e-9);
    }
    let tt = collinear_events(&t.concatenate(&t.inverse()).unwrap(), &p);
    assert_eq!(tt.events.len() % 2, 0);
    assert!(reduce(&phi(&tt.word), SolverBudget::default())
        .unwrap()
        .word
        .is_empty());
}

#[test]
fn events_pair_up_per_triple_on_closed_trajectories() {
    let p = TraceParams::default();
    for w in ["b[1,2]", "b[1,3] b[2,4]^-1", "b[1,4] b[2,3] b[3,4]"] {
        let t = braid_trajectory(&braid(w), n(4), 1.0).unwrap();
        let tr = collinear_events(&t, &p);
        for a in 1..=4 {
            for b in a + 1..=4 {
                for c in b + 1..=4 {
                    let count = tr
                        .events
                        .iter()
                        .filter(|e| {
                            let mut s = e.order;
                            s.sort_unstable();
                            s == [a, b, c]
                        })
                        .count();
                    assert_eq!(count % 2, 0, "{w} ({a},{b},{c})");
                }
            }
        }
    }
}

#[test]
fn reparametrization_keeps_the_word() {
    let p = TraceParams::default();
    let t = standard_generator_trajectory(n(4), 2, 4, 1.0).unwrap();
    let base = collinear_events(&t, &p);
    let warped = t
        .reparametrize(|s| s * s * (3.0 - 2.0 * s) * 0.5 + 0.5 * s)
        .unwrap();
    let tr = collinear_events(&warped, &p);
    assert!(tr.report.is_good());
    assert_eq!(tr.word, base.word);
    let td = standard_generator_trajectory(n(4), 2, 4, DISC_SCALE).unwrap();
    let a = tangent_events(&td, &p).unwrap();
    let b = tangent_events(&td.reparametrize(|s| s.powf(1.5)).unwrap(), &p).unwrap();
    assert_eq!(a.word, b.word);
}

#[test]
fn small_noise_keeps_the_word() {
    let p = TraceParams::default();
    let mut rng = StdRng::seed_from_u64(7);
    for (k, i, j) in [(3, 2, 3), (4, 1, 3), (5, 2, 5)] {
        for scale in [COLLINEAR_SCALE, DISC_SCALE] {
            let t = standard_generator_trajectory(n(k), i, j, scale).unwrap();
            let noisy = t
                .map_samples(|_, _, q| {
                    q + Point::new(rng.gen_range(-1e-4..1e-4), rng.gen_range(-1e-4..1e-4))
                })
                .unwrap();
            if scale == COLLINEAR_SCALE {
                let (a, b) = (collinear_events(&t, &p), collinear_events(&noisy, &p));
                assert!(a.report.is_good() && b.report.is_good());
                assert_eq!(a.word, b.word, "n={k} b{i}{j}");
            } else {
                let a = tangent_events(&t, &p).unwrap();
                let b = tangent_events(&noisy, &p).unwrap();
                assert!(a.report.is_good() && b.report.is_good());
                assert_eq!(a.word, b.word, "n={k} b{i}{j} disc");
            }
        }
    }
}

/// Three points on a random internally tangent circle, scaled about the
/// origin so the circle is tangent exactly at `t_star`.
fn planted(rng: &mut StdRng) -> (Trajectory, f64, [usize; 3]) {
    let r = rng.gen_range(0.2..0.8);
    let dir = rng.gen_range(0.0..TAU);
    let c = Circle {
        center: Point::polar(1.0 - r, dir),
        radius: r,
    };
    // angles from the tangency point, kept apart and away from it
    let mut ang = [0.0f64; 3];
    loop {
        for a in ang.iter_mut() {
            *a = rng.gen_range(1.0..TAU - 1.0);
        }
        let mut s = ang;
        s.sort_by(f64::total_cmp);
        if s[1] - s[0] > 0.3 && s[2] - s[1] > 0.3 {
            break;
        }
    }
    let t_star = rng.gen_range(0.2..0.8);
    let kappa = 0.02;
    let pts = ang.map(|a| c.center + Point::polar(r, dir + a));
    let t = Trajectory::from_fn(n(3), DISC_SCALE, 2, |k, t| {
        pts[k - 1] * (1.0 + kappa * (t - t_star))
    })
    .unwrap();
    let mut order = [1usize, 2, 3];
    order.sort_by(|&x, &y| ang[x - 1].total_cmp(&ang[y - 1]));
    (t, t_star, order)
}

#[test]
fn planted_tangencies_are_found() {
    let mut rng = StdRng::seed_from_u64(2024);
    let p = TraceParams::default();
    for _ in 0..50 {
        let (t, t_star, order) = planted(&mut rng);
        let tr = tangent_events(&t, &p).unwrap();
        assert_eq!(tr.events.len(), 1);
        assert!((tr.events[0].time - t_star).abs() < 1e-9);
        assert_eq!(tr.events[0].order, order);
        let [i, j, k] = order;
        assert_eq!(
            tr.word.letters(),
            &[DoublePrimeGenerator::new(i, j, k, n(3)).unwrap()]
        );
    }
}

#[test]
fn circles_agreeing_on_order_coincide() {
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..20 {
        let a = Point::polar(rng.gen_range(0.0..0.8), rng.gen_range(0.0..TAU));
        let b = Point::polar(rng.gen_range(0.0..0.8), rng.gen_range(0.0..TAU));
        let circles = tangent_circles_through(a, b);
        let chosen = circles
            .iter()
            .find(|c| precedes(a, b, c, 1e-9).unwrap())
            .copied()
            .unwrap();
        // two further points on the circle where a precedes b
        let on =
            |rng: &mut StdRng| chosen.center + Point::polar(chosen.radius, rng.gen_range(0.0..TAU));
        let (c, d) = (on(&mut rng), on(&mut rng));
        let abc = circumcircle(a, b, c).unwrap();
        let abd = circumcircle(a, b, d).unwrap();
        assert!(abc.tangency_residual().abs() < 1e-9);
        assert!(abd.tangency_residual().abs() < 1e-9);
        assert!(precedes(a, b, &abc, 1e-9).unwrap() && precedes(a, b, &abd, 1e-9).unwrap());
        assert!(abd.distance(c) < 1e-9);
        assert!((abc.center - abd.center).norm() < 1e-9);
    }
}

#[test]
fn three_strand_generator_has_two_events() {
    let p = TraceParams::default();
    let t = standard_generator_trajectory(n(3), 2, 3, 1.0).unwrap();
    let tr = collinear_events(&t, &p);
    assert_eq!(tr.events.len(), 2);
    let img = phi(&tr.word);
    assert_eq!(img.len(), 4);
    let red = reduce(&img, SolverBudget::default()).unwrap();
    assert!(red.certified);
    assert_eq!(red.word.len(), 2);
}

#[test]
fn tangent_word_of_braid_and_inverse_reduces() {
    let p = TraceParams::default();
    for w in [
        "b[1,2] b[1,2]^-1",
        "b[2,3]^-1 b[2,3]",
        "b[1,3] b[2,3] b[2,3]^-1 b[1,3]^-1",
    ] {
        let t = braid_trajectory(&braid(w), n(3), DISC_SCALE).unwrap();
        let tr = tangent_events(&t, &p).unwrap();
        assert!(tr.report.is_good());
        let img: Word<_> = h(&tr.word);
        assert!(
            reduce(&img, SolverBudget::default())
                .unwrap()
                .word
                .is_empty(),
            "{w}"
        );
    }
}
