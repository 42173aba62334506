version = "0.3.0"

def print_header(file=None):
  print(f"#### egcore {version} ####", file=file)
