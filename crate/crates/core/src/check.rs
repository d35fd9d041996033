/// One verified identity: both sides in canonical text and the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub left: String,
    pub right: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, left: impl Into<String>, right: impl Into<String>, pass: bool) -> Self {
        Check {
            name: name.into(),
            left: left.into(),
            right: right.into(),
            pass,
        }
    }
}
