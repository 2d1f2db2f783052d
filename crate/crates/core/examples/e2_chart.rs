//! The E₂ chart of the sphere against itself, its vanishing pattern and a few stems.

use twistalg::adams::Context;
use twistalg::adams_ss::{ascii_chart, collapse_and_assemble, e2_page, sphere_model, vanishing_check};
use twistalg::cli::module_text;

fn main() {
    let s = sphere_model(Context::default());
    let page = e2_page(&s, &s, -2, 13).unwrap();
    print!("{}", ascii_chart(&page));
    let v = vanishing_check(&page);
    println!("allowed residues {:?}, pattern holds {}", v.allowed, v.holds);
    for n in [3, 7, 11] {
        let a = collapse_and_assemble(&page, n).unwrap();
        let pieces: Vec<String> =
            a.pieces.iter().filter(|p| !p.2.is_zero()).map(|p| format!("E({},{}) = {}", p.0, p.1, module_text(&p.2))).collect();
        println!("n = {n:>2}: {} [{}]", pieces.join(", "), a.status.as_str());
    }
}
