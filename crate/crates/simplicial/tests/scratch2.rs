use itertools::Itertools;
use simplicial::corpus::*;
use simplicial::shelling::*;
use simplicial::*;

#[test]
fn scratch_list_hachimori_orders() {
    let h = example(ExampleId::Hachimori);
    let verts = h.vertex_set().to_vec();
    let mut found = Vec::new();
    for perm in verts.iter().copied().permutations(verts.len()) {
        let o = VertexOrder::new(&h, &perm).unwrap();
        if is_lex_shellable_under(&h, &o).unwrap().is_shelling() {
            found.push(perm);
        }
    }
    for p in &found {
        println!("order: {:?}", p);
    }
    assert_eq!(found.len(), 7);
}
