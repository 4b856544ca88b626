from hypothesis import settings

# exact-rational oracles make individual examples slow but deterministic;
# wall-clock deadlines only add flakiness here
settings.register_profile("certreal", deadline=None)
settings.load_profile("certreal")
