//! Rendering a random expression and parsing it back gives the same value.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use clifspin::text::{parse, BinaryOp, Expr, Style, UnaryOp};
use clifspin::Signature;

const UNARY: [UnaryOp; 7] = [
    UnaryOp::Neg,
    UnaryOp::Rev,
    UnaryOp::Inv,
    UnaryOp::GradeInv,
    UnaryOp::Conj,
    UnaryOp::Dual,
    UnaryOp::Exp,
];

const BINARY: [BinaryOp; 7] = [
    BinaryOp::Add,
    BinaryOp::Sub,
    BinaryOp::Mul,
    BinaryOp::Wedge,
    BinaryOp::LeftContract,
    BinaryOp::RightContract,
    BinaryOp::Dot,
];

fn random_expr(rng: &mut ChaCha8Rng, sig: Signature, depth: usize) -> Expr {
    let leaf = depth == 0 || rng.random_bool(0.25);
    if leaf {
        return match rng.random_range(0..6) {
            0 => Expr::Imaginary,
            1 | 2 => Expr::Number(rng.random_range(-5.0..5.0)),
            3 => Expr::Number(rng.random_range(-4i32..=4) as f64),
            _ => Expr::Generator(rng.random_range(0..sig.n())),
        };
    }
    match rng.random_range(0..10) {
        0..=2 => Expr::Unary(
            UNARY[rng.random_range(0..UNARY.len())],
            Box::new(random_expr(rng, sig, depth - 1)),
        ),
        3 => Expr::Grade(
            Box::new(random_expr(rng, sig, depth - 1)),
            rng.random_range(0..=sig.n()),
        ),
        _ => Expr::Binary(
            BINARY[rng.random_range(0..BINARY.len())],
            Box::new(random_expr(rng, sig, depth - 1)),
            Box::new(random_expr(rng, sig, depth - 1)),
        ),
    }
}

#[test]
fn five_hundred_random_trees() {
    let sigs = [
        Signature::spacetime(),
        Signature::new(3, 0).unwrap(),
        Signature::new(2, 2).unwrap(),
        Signature::new(0, 3).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let mut evaluated = 0;
    for case in 0..500 {
        let sig = sigs[case % sigs.len()];
        let tree = random_expr(&mut rng, sig, 4);
        let style = Style {
            ascii: case % 2 == 0,
            gamma_names: sig == Signature::spacetime() && case % 3 == 0,
        };
        let text = tree.render(sig, style);
        let back = parse(&text, sig).unwrap_or_else(|e| panic!("{text}: {e}"));
        assert_eq!(
            back.render(sig, style),
            parse(&back.render(sig, style), sig)
                .unwrap()
                .render(sig, style)
        );
        match (tree.eval(sig), back.eval(sig)) {
            (Ok(a), Ok(b)) => {
                assert!(a.approx_eq(&b, 0.0), "{text}");
                evaluated += 1;
            }
            (Err(a), Err(b)) => assert_eq!(a, b),
            (a, b) => panic!("{text}: {a:?} vs {b:?}"),
        }
    }
    assert!(evaluated > 250, "only {evaluated} trees evaluated");
}
