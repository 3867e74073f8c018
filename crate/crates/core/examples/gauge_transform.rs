//! Finds the gauge that makes powers of x1 undeformed for some raw product,
//! and the two candidate transforms of A.

use sl2star::gauge::{
    cnk_from_b, gauge_ab_transform, gauge_ab_transform_conjugated, solve_gauge, verify_gauge, RawX1Model,
};
use sl2star::ncalg::a_series;
use sl2star::series::rational::{int, rat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = RawX1Model::new([(2, rat(1, 4)), (4, rat(-1, 9))])?;
    let table = cnk_from_b(&model, 6)?;
    for n in 1..=6 {
        println!("x1^*{n}: {:?}", table.row(n).unwrap().iter().map(|(k, c)| format!("eps^{k}: {c}")).collect::<Vec<_>>());
    }

    let a = solve_gauge(&model, 12)?;
    for (k, v) in a.entries() {
        println!("a{k} = {v}");
    }
    println!("verified to n = 12: {}", verify_gauge(&model, &a, 12));

    let big_a = a_series(&[int(4)], 6);
    println!("A * M = {}", gauge_ab_transform(&big_a, &a)?);
    println!("A / M = {}", gauge_ab_transform_conjugated(&big_a, &a)?);
    Ok(())
}
