use proptest::prelude::*;
use qeuclid_cli::expr::{parse, Atom, Expr, Factor, Gen, Term};

fn gen() -> impl Strategy<Value = Gen> {
    prop::sample::select(Gen::ALL.to_vec())
}

fn factor(depth: u32) -> BoxedStrategy<Factor> {
    let leaf = prop_oneof![gen().prop_map(Atom::Gen), (1u64..20).prop_map(Atom::Int)];
    let atom = if depth == 0 {
        leaf.boxed()
    } else {
        prop_oneof![3 => leaf, 1 => expr(depth - 1).prop_map(|e| Atom::Group(Box::new(e)))].boxed()
    };
    (atom, prop::option::of(-3i32..=4))
        .prop_map(|(atom, exp)| {
            let ok_negative = match &atom {
                Atom::Gen(g) => g.invertible(),
                Atom::Int(_) => true,
                Atom::Group(_) => false,
            };
            let exp = exp.map(|e| if e < 0 && !ok_negative { -e } else { e });
            Factor { atom, exp }
        })
        .boxed()
}

fn expr(depth: u32) -> BoxedStrategy<Expr> {
    prop::collection::vec((any::<bool>(), prop::collection::vec(factor(depth), 1..4)), 1..4)
        .prop_map(|ts| Expr { terms: ts.into_iter().map(|(n, factors)| (n, Term { factors })).collect() })
        .boxed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn render_then_parse_round_trips(e in expr(2)) {
        let text = e.to_string();
        let once = parse(&text).unwrap();
        prop_assert_eq!(&once, &e, "{}", text);
        prop_assert_eq!(parse(&once.to_string()).unwrap(), once);
    }
}

#[test]
fn juxtaposition_and_star_agree() {
    assert_eq!(parse("x0 L").unwrap(), parse("x0 * L").unwrap());
}
