//! Seeded instances written as JSON and parsed back.

use twistalg::adams::Context;
use twistalg::gen::Generator;
use twistalg::json::{parse, to_json, Instance};

fn main() {
    let ctx = Context::default();
    let mut g = Generator::new(ctx, 42, 2);
    let text = to_json(ctx, &Instance::BObject(g.finite_bobject()));
    print!("{text}");
    let (_, back) = parse(&text).unwrap();
    assert_eq!(to_json(ctx, &back), text);

    let d = to_json(ctx, &Instance::Diagram(g.diagram()));
    println!("diagram file: {} bytes, reparses: {}", d.len(), parse(&d).is_ok());
    println!("malformed: {}", parse("{\"schema_version\": \"2\"}").unwrap_err());
}
