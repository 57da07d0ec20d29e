# path: src/flatfront/data/__init__.py
