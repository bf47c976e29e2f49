//! Known results for the named generator families, keyed by the set of
//! reflections they generate.

use octoleech::action::{FamilyName, GeneratorFamily};

/// Family, group order, plane orbit size and strength.
type Row = (Vec<FamilyName>, u128, Option<(usize, u32)>);

fn rows() -> Vec<Row> {
    use FamilyName::*;
    let v = FamilyName::v;
    let mut out: Vec<Row> = vec![
        (vec![A2], 6, None),
        (vec![Vinf], 24, Some((6, 1))),
        (vec![S], 168, Some((21, 2))),
        (std::iter::once(Vinf).chain((0..7).map(V)).collect(), 98304, None),
        ((0..7).map(V).chain([S]).collect(), 4_157_776_806_543_360_000, None),
    ];
    for t in 0..7 {
        out.push((vec![v(t)], 96, None));
        out.push((vec![v(t), v(t + 1), v(t + 3)], 1536, None));
        out.push((vec![v(t + 2), v(t + 5), v(t + 6), v(t)], 6144, None));
        out.push((vec![S, v(t)], 6048, Some((63, 3))));
        out.push((vec![S, v(t), v(t + 1), v(t + 3)], 251_596_800, Some((819, 5))));
        out.push((vec![S, v(t + 2), v(t + 5), v(t + 6), v(t)], 1_345_036_492_800, None));
        for u in t + 1..7 {
            out.push((vec![v(t), v(u)], 384, None));
            out.push((vec![S, v(t), v(u)], 604_800, Some((819, 5))));
        }
    }
    out
}

/// Expected group order and, where known, the plane orbit size and design
/// strength.
pub fn lookup(fam: &GeneratorFamily) -> Option<(u128, Option<(usize, u32)>)> {
    rows()
        .into_iter()
        .find(|(names, _, _)| GeneratorFamily::new(names).vectors() == fam.vectors())
        .map(|(_, order, plane)| (order, plane))
}

/// Orders past G₂(4), computed only on request.
pub fn is_stretch(order: u128) -> bool {
    order > 251_596_800
}
