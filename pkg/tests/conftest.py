from hypothesis import HealthCheck, settings

# Property tests drive real rate computations; keep them deterministic and
# free of wall-clock deadlines so the suite is stable under load.
settings.register_profile(
    "ci",
    deadline=None,
    derandomize=True,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")
