//! Star products, commutators and the eps-reflection symmetry
//! `f*g = flip(flip(g)*flip(f))`.

use sl2star::ncalg::{a_series, x_system, Generator};
use sl2star::series::rational::{int, rat};

fn main() {
    use Generator::*;
    // A(eps^2) = 4 - eps^2/3
    let a = a_series(&[int(4), rat(-1, 3)], 6);
    let sys = x_system(6, &a).expect("A is even");
    let g = |x| sys.generator(x);

    println!("[x1, x2] = {}", sys.commutator(&g(X1), &g(X2)));
    println!("[x2, x3] = {}", sys.commutator(&g(X2), &g(X3)));
    println!("e+ * x2  = {}", sys.star(&g(EPlus), &g(X2)));
    println!("(x2 + x3)^2 = {}", sys.power(&g(X2).add(&g(X3)), 2));

    let f = sys.star(&g(X3), &g(EPlus));
    let h = sys.star(&g(X2), &g(X1));
    let lhs = sys.star(&f, &h);
    let rhs = sys.eps_flip(&sys.star(&sys.eps_flip(&h), &sys.eps_flip(&f)));
    println!("reflection symmetry holds: {}", lhs == rhs);
}
