# path: src/flatfront/curves/__init__.py
