use std::sync::Arc;
use std::thread;

use hocoh::{CandidateOrder, FiniteGroup, GammaModule, HigherCohomology, NormalSubgroup, PrimeField, ResolutionCache};

#[test]
fn shared_cache_across_threads() {
    let g = Arc::new(FiniteGroup::symmetric(3));
    let f = PrimeField::new(3).unwrap();
    let cache = Arc::new(ResolutionCache::new());
    let serial = {
        let e = HigherCohomology::new(g.clone(), f, NormalSubgroup::trivial(), 3).unwrap();
        let v = GammaModule::trivial(g.clone(), f, 1);
        hocoh::les::cohomology_grid(&e, &v, 3, 2).unwrap()
    };
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let (g, cache) = (g.clone(), cache.clone());
            thread::spawn(move || {
                let e = HigherCohomology::with_cache(g.clone(), f, NormalSubgroup::trivial(), 3, cache, CandidateOrder::Canonical)
                    .unwrap();
                let v = GammaModule::trivial(g, f, 1);
                hocoh::les::cohomology_grid(&e, &v, 3, 2).unwrap()
            })
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), serial);
    }
    // one entry per filtration level below stabilization
    assert!(!cache.is_empty());
    assert!(cache.len() <= 3);
}
