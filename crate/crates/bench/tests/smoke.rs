use conflop_bench::*;

#[test]
fn workloads_return_expected_values() {
    assert!(truncated_algebra(6).unwrap() > 0);
    assert!(stasheff(4) > 0);
    assert!(stability_vplus(3, false).unwrap().is_stable());
    assert_eq!(stability_vplus(3, true).unwrap().name(), "Unstable");
    assert_eq!(scan(3).unwrap().len(), 5);
    assert!(sphere(4).unwrap());
    assert_eq!(ext_simple(6).unwrap(), vec![0, 2, 2, 0]);
    assert_eq!(arc_flop(0).unwrap().seg_crossings, 0);
}
