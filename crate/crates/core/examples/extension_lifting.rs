//! Extension classes, functoriality, and the lifting obstruction for a ladder.

use twistalg::adams::{BObject, Context};
use twistalg::homalg::{ext, ext_class_of, pushforward, ExtClass, ShortExact};
use twistalg::gen::Generator;
use twistalg::linalg::Scalar;

fn main() {
    let ctx = Context::default();
    let z3 = BObject::cyclic(ctx, 1, 1).unwrap();
    let grp = ext(&z3, &z3, 1).unwrap();
    let cls = ExtClass::from_coords(grp, &[Scalar::from_int(1), Scalar::from_int(0)]);
    let ses = cls.realize();
    let back = ext_class_of(&ses).unwrap();
    println!("middle term has {} generators; class read back equals the input: {}", ses.mid.ngens(), back.equals(&cls));
    println!("normal-form coordinates {:?}", back.coords());

    // pushing out along 3 kills it
    let three = z3.psi.scale(&Scalar::from_int(3));
    println!("3_* class is zero: {}", pushforward(&three, &z3, &cls).unwrap().is_zero());
    println!("split sequence has zero class: {}", ext_class_of(&ShortExact::split(&z3, &z3)).unwrap().is_zero());

    let mut g = Generator::new(ctx, 5, 2);
    for (name, l) in [("liftable", g.ladder_liftable()), ("obstructed", g.ladder_obstructed())] {
        let r = l.lifting().unwrap();
        println!(
            "{name}: liftable {}, obstruction zero {}, witness {}, routes agree {}",
            r.liftable,
            r.obstruction.is_zero(),
            r.witness.is_some(),
            r.consistent()
        );
    }
}
