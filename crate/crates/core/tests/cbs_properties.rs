use chromafun::cbs::{
    layers_are_preimages, lazy_cbs_evaluate, random_fiber_product_system, relative_cbs, LazyInjectionPair, LazyOutcome,
};
use chromafun::Result;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #[test]
    fn fiber_products_give_commuting_bijections(seed in any::<u64>()) {
        let sys = random_fiber_product_system(&mut ChaCha8Rng::seed_from_u64(seed), 7, 4);
        sys.validate().unwrap();
        let res = relative_cbs(&sys).unwrap();
        let mut seen1 = vec![false; sys.y1];
        for &y in &res.r1 {
            prop_assert!(!std::mem::replace(&mut seen1[y], true));
        }
        let mut seen2 = vec![false; sys.y2];
        for &y in &res.r2 {
            prop_assert!(!std::mem::replace(&mut seen2[y], true));
        }
        for x in 0..sys.x1 {
            prop_assert_eq!(sys.g[res.r1[x]], res.r2[sys.f[x]]);
        }
        prop_assert!(layers_are_preimages(&sys, &res));
    }
}

/// Level 2 is `ℕ` with `i = j = +1`; level 1 is two copies of it, encoded
/// as `2k + copy`, lying over `ℕ` by `f(2k + copy) = k`.
struct Shift {
    doubled: bool,
}

impl Shift {
    fn step(&self) -> u64 {
        if self.doubled {
            2
        } else {
            1
        }
    }
}

impl LazyInjectionPair for Shift {
    type X = u64;
    type Y = u64;
    fn i(&self, x: &u64) -> Result<u64> {
        Ok(x + self.step())
    }
    fn j_preimage(&self, x: &u64) -> Result<Option<u64>> {
        Ok(x.checked_sub(self.step()))
    }
    fn i_preimage(&self, y: &u64) -> Result<Option<u64>> {
        Ok(y.checked_sub(self.step()))
    }
}

fn evaluate(pair: &Shift, x: u64) -> (u64, bool) {
    match lazy_cbs_evaluate(pair, &x, 1000).unwrap() {
        LazyOutcome::Determined { image, in_c, .. } => (image, in_c),
        LazyOutcome::Undetermined { .. } => panic!("fuel is ample for small elements"),
    }
}

#[test]
fn infinite_system_has_nonempty_c_and_commutes() {
    let (one, two) = (Shift { doubled: true }, Shift { doubled: false });
    let f = |x: u64| x / 2;
    for x in 0..400u64 {
        let (r1, in_c1) = evaluate(&one, x);
        let (r2, in_c2) = evaluate(&two, f(x));
        // f^{-1}(C_2) = C_1 and g ∘ r1 = r2 ∘ f, with g = f.
        assert_eq!(in_c1, in_c2, "x = {x}");
        assert_eq!(f(r1), r2, "x = {x}");
    }
    // C_2 is the even numbers, so r2 swaps 2k and 2k + 1.
    assert_eq!((0..6).map(|x| evaluate(&two, x).0).collect::<Vec<_>>(), vec![1, 0, 3, 2, 5, 4]);
}
