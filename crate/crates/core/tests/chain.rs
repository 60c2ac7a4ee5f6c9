use qpforge::catalog::{Catalog, LambdaChoice};
use qpforge::chain::{parse_chain, verify_chain};
use qpforge::error::Error;
use qpforge::report::{Report, Status};

fn chain_text(case: &str) -> String {
    Catalog::embedded().text(&format!("{case}.chain")).unwrap().into_owned()
}

fn verify_text(text: &str) -> Report {
    let cd = parse_chain(text).unwrap();
    verify_chain(&cd, &Catalog::embedded(), &LambdaChoice::default(), 3)
}

#[test]
fn chains_pass_for_other_parameters() {
    let cat = Catalog::embedded();
    for lambda in [LambdaChoice::int(3), LambdaChoice::Symbolic] {
        for case in ["333", "2222", "442", "632"] {
            let r = verify_chain(&cat.chain(case).unwrap(), &cat, &lambda, 3);
            assert!(r.all_pass(), "{case} at {lambda}: {:?}", r.failures());
        }
    }
}

#[test]
fn wrong_period_fails() {
    let text = chain_text("442").replace("ext 2@-1 0,1,1,0,1,0,0 period 3", "ext 2@-1 0,1,1,0,1,0,0 period 2");
    let r = verify_text(&text);
    assert!(!r.all_pass());
    assert!(r.failures().iter().any(|f| f.contains("period")), "{:?}", r.failures());
}

#[test]
fn wrong_extension_vector_fails() {
    let text = chain_text("333").replace("ext 4@0 1,0,1,1,1 period 2", "ext 4@0 1,1,0,1,1 period 2");
    let r = verify_text(&text);
    assert!(r.count(Status::Fail) >= 1);
}

#[test]
fn wrong_closing_fails() {
    let text = chain_text("333").replace("close f1 at 1@-1,3@-1,5@-1,6@-1,7@-1", "close f1 at 1@-1,3@-1,5@-1,6@-1,8@-1");
    assert!(!verify_text(&text).all_pass());
}

#[test]
fn wrong_h_fails() {
    let text = chain_text("333").replace("h 1,1,2,1,1", "h 1,1,1,1,1");
    assert!(!verify_text(&text).all_pass());
}

#[test]
fn reports_round_trip_through_json() {
    let r = verify_text(&chain_text("2222"));
    let back = Report::from_json(&r.to_json()).unwrap();
    assert_eq!(back, r);
    assert!(back.all_pass());
}

#[test]
fn malformed_descriptors() {
    assert!(matches!(parse_chain("chain x\ncase 333\next 1@0 1,2 period 2\n"), Err(Error::ParseError { .. })));
    assert!(matches!(parse_chain("chain x\ncase 333\nconcealed f1\n  h 1,a\n"), Err(Error::ParseError { line: 4, .. })));
    let unknown = parse_chain("chain x\ncase 333\nconcealed f99\n").unwrap();
    let r = verify_chain(&unknown, &Catalog::embedded(), &LambdaChoice::default(), 3);
    assert!(!r.all_pass());
}
