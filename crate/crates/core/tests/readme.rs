use zeta_borel::verify::catalogue;

const README: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md"));

#[test]
fn coverage_matrix_lists_each_case_once() {
    let matrix = README.split("## Coverage matrix").nth(1).expect("matrix section");
    let rows: Vec<&str> = matrix.lines().filter(|l| l.starts_with("| `")).collect();
    let ids: Vec<String> = catalogue().iter().map(|c| c.id.clone()).collect();
    for id in &ids {
        let cell = format!("| `{id}` |");
        let n = rows.iter().filter(|r| r.starts_with(&cell)).count();
        assert_eq!(n, 1, "{id} appears {n} times in the matrix");
    }
    assert_eq!(rows.len(), ids.len(), "matrix has rows for unknown ids");
}
