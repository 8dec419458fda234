//! Smith normal form of a small integer matrix, with the unimodular
//! transforms and the resulting cokernel.

use flagtopo::homalg::{smith_normal_form, AbelianGroup, IntegerMatrix};
use num_traits::ToPrimitive;

fn main() {
    let m = IntegerMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
    let snf = smith_normal_form(&m);

    println!("M = {m:?}");
    println!("D diagonal = {:?}", snf.diagonal());
    println!("U·M·V == D: {}", &(&snf.u * &m) * &snf.v == snf.d);
    println!("det U = {}, det V = {}", snf.u.determinant(), snf.v.determinant());

    let factors: Vec<u64> = snf.diagonal().iter().filter_map(|d| d.to_u64()).filter(|&d| d > 1).collect();
    let free = m.rows() - snf.rank();
    println!("coker M = {}", AbelianGroup::from_cyclic_orders(free, &factors));
}
