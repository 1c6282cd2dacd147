use krbound::homfly::{HomflyEngine, SkeinNode};
use krbound::{braid_to_diagram, BraidWord, LaurentPoly2, Sign};
use rand::{Rng, SeedableRng};

fn random_braid(rng: &mut impl Rng) -> BraidWord {
    let strands = rng.gen_range(2..=4);
    let len = rng.gen_range(1..=9);
    let letters = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(strands, letters).unwrap()
}

#[test]
fn skein_relation_at_random_nodes() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let mut engine = HomflyEngine::default();
    let a = LaurentPoly2::a();
    let a_inv = LaurentPoly2::az(-1, 0);
    for _ in 0..20 {
        let node = SkeinNode::from_diagram(&braid_to_diagram(&random_braid(&mut rng)));
        let i = rng.gen_range(0..node.crossing_count());
        let (this, other, smooth) = (
            engine.eval(&node),
            engine.eval(&node.switched(i)),
            engine.eval(&node.smoothed(i)),
        );
        let (plus, minus) = match node.sign(i) {
            Sign::Positive => (this, other),
            Sign::Negative => (other, this),
        };
        assert_eq!(
            &(&a * &minus) - &(&a_inv * &plus),
            &LaurentPoly2::z() * &smooth
        );
    }
}

#[test]
fn canonical_form_is_idempotent() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    for _ in 0..50 {
        let node = SkeinNode::from_diagram(&braid_to_diagram(&random_braid(&mut rng)));
        let (c, k) = node.canonical();
        assert_eq!(c.canonical(), (c.clone(), k));
    }
}

#[test]
fn four_strand_markov_moves() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(5);
    let mut engine = HomflyEngine::default();
    for _ in 0..40 {
        let b = random_braid(&mut rng);
        let p = engine.homfly(&braid_to_diagram(&b)).unwrap();
        let mut letters = b.letters().to_vec();
        letters.rotate_right(1);
        let rotated = BraidWord::new(b.strands(), letters).unwrap();
        assert_eq!(
            engine.homfly(&braid_to_diagram(&rotated)).unwrap(),
            p,
            "{b}"
        );
    }
}
