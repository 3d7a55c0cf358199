from .fields_checker import check_choice
