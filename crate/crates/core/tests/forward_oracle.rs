mod common;

use common::{naive_forward, random_case};
use gradfuzz::fuzzy::forward;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn forward_matches_naive_reference_on_100_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (model, x, _) = random_case(&mut rng, 5, 1);
        let fast = forward(&model, &x).unwrap();
        let slow = naive_forward(&model, &x);
        for (a, b) in fast
            .probs
            .iter()
            .zip(&slow.probs)
            .chain(fast.logits.iter().zip(&slow.logits))
            .chain(fast.firings.iter().zip(&slow.firings))
        {
            worst = worst.max((a - b).abs());
        }
    }
    assert!(worst <= 1e-12, "max abs deviation {worst:e}");
}
