use matpw::pathwidth::{decide_pw_le, pathwidth_exact};
use matpw::propcheck::Named;

fn main() -> matpw::Result<()> {
    for named in Named::registry() {
        let m = named.build()?;
        let (pw, pd) = pathwidth_exact(&m)?;
        let order: Vec<String> = pd.ids(&m).iter().map(ToString::to_string).collect();
        println!("{named:>4}  pw {pw}  order {}  lambda {:?}", order.join(" "), pd.lambdas);
        assert!(decide_pw_le(&m, pw)?);
        assert!(pw == 0 || !decide_pw_le(&m, pw - 1)?);
    }
    Ok(())
}
