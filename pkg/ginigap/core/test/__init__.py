# This __init__.py file required to retrieve path of test module
# to insert it to pytest --ignore
