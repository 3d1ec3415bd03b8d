use serde_json::Value;

/// Optional step log. Each recorded step is one JSON object.
#[derive(Clone, Debug, Default)]
pub struct Trace {
    enabled: bool,
    steps: Vec<Value>,
}

impl Trace {
    pub fn enabled() -> Self {
        Trace {
            enabled: true,
            steps: Vec::new(),
        }
    }

    pub fn disabled() -> Self {
        Trace::default()
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    /// The closure only runs when tracing is on.
    pub fn record(&mut self, step: impl FnOnce() -> Value) {
        if self.enabled {
            self.steps.push(step());
        }
    }

    pub fn steps(&self) -> &[Value] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Value> {
        self.steps
    }
}
