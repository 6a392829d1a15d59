from hypothesis import settings

settings.register_profile("mfkit", deadline=None, derandomize=True)
settings.load_profile("mfkit")
