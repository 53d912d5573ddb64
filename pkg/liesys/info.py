__app_name__ = "LieSys"
__package_name__ = "liesys"
__version__ = "0.1.0"
__description__ = "Exact arithmetic for linear systems, finitary and Mackey Lie algebras and their automorphisms"
__author__ = "Septimiu Ujica"
__author_email__ = "me@septi.ro"
__author_url__ = "https://www.septi.ro"
__license__ = "GPLv3"
