use bicx_core::bicomplex::{direct_sum, shift, validate};
use bicx_core::cohomology::{aeppli, bott_chern, de_rham, dolbeault, frolicher, CohomologyTable, Direction};
use bicx_core::models::{iwasawa, torus};

fn multisets(t: &CohomologyTable) -> Vec<Vec<usize>> {
    t.degree_multisets().into_iter().map(|(_, v)| v).collect()
}

fn sorted(rows: &[&[usize]]) -> Vec<Vec<usize>> {
    rows.iter()
        .map(|r| {
            let mut v = r.to_vec();
            v.sort_unstable();
            v
        })
        .collect()
}

#[test]
fn iwasawa_tables_match_the_printed_diamonds() {
    let x = iwasawa();
    let a = x.complex();
    assert!(validate(a).is_empty());
    assert_eq!(de_rham(a).betti(), [1, 4, 8, 10, 8, 4, 1]);
    assert_eq!(
        multisets(&dolbeault(a)),
        sorted(&[&[1], &[2, 3], &[2, 6, 3], &[1, 6, 6, 1], &[3, 6, 2], &[3, 2], &[1]])
    );
    let ss = frolicher(a, Direction::Column);
    assert_eq!(ss.degeneration_page, 2);
    assert_eq!(
        multisets(&ss.pages[1]),
        sorted(&[&[1], &[2, 2], &[2, 4, 2], &[1, 4, 4, 1], &[2, 4, 2], &[2, 2], &[1]])
    );
    assert_eq!(
        multisets(&bott_chern(a)),
        sorted(&[&[1], &[2, 2], &[3, 4, 3], &[1, 6, 6, 1], &[2, 8, 2], &[3, 3], &[1]])
    );
}

#[test]
fn iwasawa_individual_entries() {
    let x = iwasawa();
    let a = x.complex();
    let bc = bott_chern(a);
    assert_eq!((bc.get(1, 0), bc.get(1, 1), bc.get(2, 0), bc.get(2, 2)), (2, 4, 3, 8));
    let ae = aeppli(a);
    assert_eq!((ae.get(1, 0), ae.get(1, 1), ae.get(2, 0)), (3, 8, 2));
    let d = dolbeault(a);
    assert_eq!((d.get(1, 0), d.get(0, 1)), (3, 2));
}

#[test]
fn blow_up_along_a_torus_fibre() {
    let x = iwasawa();
    let z = torus(1).unwrap();
    let (total, _, _) = direct_sum(x.complex(), &shift(z.complex(), 1));
    assert_eq!(de_rham(&total).betti(), [1, 4, 9, 12, 9, 4, 1]);
    assert_eq!(
        multisets(&dolbeault(&total)),
        sorted(&[&[1], &[2, 3], &[2, 7, 3], &[1, 7, 7, 1], &[3, 7, 2], &[3, 2], &[1]])
    );
    let ss = frolicher(&total, Direction::Column);
    assert_eq!(
        multisets(&ss.pages[1]),
        sorted(&[&[1], &[2, 2], &[2, 5, 2], &[1, 5, 5, 1], &[2, 5, 2], &[2, 2], &[1]])
    );
    assert_eq!(
        multisets(&bott_chern(&total)),
        sorted(&[&[1], &[2, 2], &[3, 5, 3], &[1, 7, 7, 1], &[2, 9, 2], &[3, 3], &[1]])
    );
}
