use std::fs;
use std::path::Path;

use sofic_core::group::file::GroupFile;

#[test]
fn every_fixture_is_a_group_of_the_stated_order() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/groups");
    let mut seen = 0;
    for entry in fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let stated: usize = text
            .lines()
            .find_map(|l| l.strip_prefix("# order "))
            .unwrap_or_else(|| panic!("{}: no order comment", path.display()))
            .trim()
            .parse()
            .unwrap();
        let g = GroupFile::parse(&text).unwrap().group;
        let elements = g.elements().unwrap();
        assert_eq!(elements.len(), stated, "{}", path.display());
        assert!(stated <= 16);
        let e = g.identity();
        for a in &elements {
            assert_eq!(g.mul(&e, a), *a);
            assert_eq!(g.mul(a, &g.inverse(a)), e);
            for b in &elements {
                for c in &elements {
                    assert_eq!(g.mul(&g.mul(a, b), c), g.mul(a, &g.mul(b, c)));
                }
            }
        }
        seen += 1;
    }
    assert_eq!(seen, 35);
}
