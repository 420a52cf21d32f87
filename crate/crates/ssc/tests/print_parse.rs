//! parse(print(x)) = x on generated entities of both syntaxes, on chains
//! and on whole declaration files.

use proptest::prelude::*;

use ssc::file::{parse_file, Def, Entity};
use ssc::parse;
use ssc::sexp::read_one;
use ssc_core::cwf::{self, CSub};
use ssc_core::gen::{Gen, GenConfig};
use ssc_core::{minim, SubS, Tm, Ty};

fn gen(seed: u64, depth: u32) -> Gen {
    Gen::new(GenConfig { seed, max_depth: depth, ..GenConfig::default() })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn single_substitution_syntax(seed in any::<u64>(), depth in 1u32..=4) {
        let mut g = gen(seed, depth);
        let (ctx, a, t) = cwf::sample_ssc(&mut g, depth).unwrap();
        let (s, _, _) = g.retry(|g| g.sub(&ssc_core::gen::Cx::new(ctx.clone())?, depth)).unwrap();
        prop_assert_eq!(parse::ty::<SubS>(&read_one(&a.to_string()).unwrap()).unwrap(), a.clone());
        prop_assert_eq!(parse::tm::<SubS>(&read_one(&t.to_string()).unwrap()).unwrap(), t.clone());
        prop_assert_eq!(parse::ctx::<SubS>(&read_one(&ctx.to_string()).unwrap()).unwrap(), ctx.clone());
        let s2: SubS = parse::SubSyntax::parse(&read_one(&s.to_string()).unwrap()).unwrap();
        prop_assert_eq!(s2, s.clone());

        let defs = vec![
            Def { name: "G".into(), entity: Entity::Ctx(ctx.clone()) },
            Def { name: "A".into(), entity: Entity::Ty { ctx: Some(ctx.clone()), ty: a.clone() } },
            Def { name: "t".into(), entity: Entity::Tm { ctx: Some(ctx.clone()), tm: t, ty: Some(a) } },
            Def { name: "s".into(), entity: Entity::Sub { ctx: Some(ctx), sub: s, cod: None } },
        ];
        let src: Vec<String> = defs.iter().map(|d| d.to_string()).collect();
        prop_assert_eq!(parse_file::<SubS>(&src.join("\n")).unwrap(), defs);
    }

    #[test]
    fn parallel_substitution_syntax(seed in any::<u64>(), depth in 1u32..=4) {
        let mut g = gen(seed, depth);
        let (ctx, a, t) = cwf::sample_cwf(&mut g, depth).unwrap();
        let (dom, s) = cwf::sample_cwf_sub(&mut g, depth).unwrap();
        prop_assert_eq!(parse::ty::<CSub>(&read_one(&a.to_string()).unwrap()).unwrap(), a.clone());
        prop_assert_eq!(parse::tm::<CSub>(&read_one(&t.to_string()).unwrap()).unwrap(), t.clone());
        prop_assert_eq!(parse::ctx::<CSub>(&read_one(&ctx.to_string()).unwrap()).unwrap(), ctx.clone());
        let s2: CSub = parse::SubSyntax::parse(&read_one(&s.to_string()).unwrap()).unwrap();
        prop_assert_eq!(s2, s.clone());

        let defs = vec![
            Def { name: "t".into(), entity: Entity::Tm { ctx: Some(ctx), tm: t, ty: Some(a) } },
            Def { name: "s".into(), entity: Entity::Sub { ctx: Some(dom.clone()), sub: s, cod: Some(dom) } },
        ];
        let src: Vec<String> = defs.iter().map(|d| d.to_string()).collect();
        prop_assert_eq!(parse_file::<CSub>(&src.join("\n")).unwrap(), defs);
    }
}

#[test]
fn built_in_chains() {
    for d in minim::DERIVATIONS {
        let chain = minim::derive_full_axiom(d.name).unwrap();
        let again = parse::chain(&read_one(&chain.to_string()).unwrap()).unwrap();
        assert_eq!(again, chain, "{}", d.name);
        let file = format!("(def c chain {chain})");
        let defs: Vec<Def> = parse_file(&file).unwrap();
        assert_eq!(defs[0].entity, Entity::Chain(chain));
    }
}

#[test]
fn named_references_expand() {
    let defs: Vec<Def> = parse_file("(def A ty (Pi Top Top))\n(def f tm (lam tt) A)").unwrap();
    let Entity::Tm { ty: Some(a), tm, .. } = &defs[1].entity else { panic!() };
    assert_eq!(*a, Ty::pi(Ty::Top, Ty::Top));
    assert_eq!(*tm, Tm::lam(Tm::Tt));
}
