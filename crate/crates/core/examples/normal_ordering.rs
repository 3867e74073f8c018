//! Reduces a few words to the ordered basis and shows that every reduction
//! order gives the same answer.

use sl2star::ncalg::{default_x_system, FreeElement, Generator, PbwMonomial, Strategy};
use sl2star::series::EpsSeries;

fn main() {
    use Generator::*;
    let sys = default_x_system(6);
    let words = [vec![X2, X1], vec![X3, X2], vec![EPlus, X3, X2, X1], vec![X3, EMinus, X2, EPlus]];
    for w in &words {
        let nf = sys.normal_form_word(w);
        println!("{w:?}\n  -> {nf}");
        let free = FreeElement::word(w.clone(), EpsSeries::one(6));
        for s in [Strategy::Rightmost, Strategy::Random(7), Strategy::Random(11)] {
            assert_eq!(sys.normal_form_with(&free, s), nf);
        }
    }

    let m = PbwMonomial::new(1, 2, 1, -2);
    println!("{m} is irreducible: {}", sys.normal_form_word(&m.word()) == sys.monomial(m));
}
