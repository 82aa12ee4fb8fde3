use levyasym::acceptance::run_all;

#[test]
fn acceptance_criteria() {
    let results = run_all(|r| println!("{}", r.line()));
    let failed: Vec<usize> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
