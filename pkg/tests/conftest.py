import hypothesis

# The sandboxed CI boxes this runs on are slow and the jet/quadrature tests do
# real work per example; deadlines only produce flaky timing failures here.
hypothesis.settings.register_profile("lab", deadline=None, max_examples=25)
hypothesis.settings.load_profile("lab")
