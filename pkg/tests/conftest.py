import hypothesis

hypothesis.settings.register_profile("bulk", max_examples=200)
hypothesis.settings.register_profile(
    "default", deadline=None, max_examples=60
)
hypothesis.settings.load_profile("default")
