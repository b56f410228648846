import ncfactor.groebner


def pytest_configure(config):
    # every Groebner basis computed anywhere in the suite re-checks its own
    # postconditions (acceptance criterion on Buchberger self-checks)
    ncfactor.groebner.SELF_CHECK = True
