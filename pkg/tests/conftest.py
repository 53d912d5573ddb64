from hypothesis import settings

settings.register_profile('liesys', max_examples=40, deadline=None)
settings.load_profile('liesys')
