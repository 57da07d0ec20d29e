# path: src/flatfront/cli/__init__.py
